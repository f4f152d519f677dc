#include "qgap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "qgap/analysis.hpp"
#include "qgap/anneal.hpp"
#include "qgap/csvio.hpp"
#include "qgap/dimer.hpp"
#include "qgap/errors.hpp"
#include "qgap/fermion.hpp"
#include "qgap/models.hpp"
#include "qgap/spectral.hpp"
#include "qgap/version.hpp"

namespace qgap::cli {

namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string out_dir = ".";
  std::string prefix;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& c, const std::string& default_prefix) {
  c.prefix = default_prefix;
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--prefix", c.prefix, "Output file prefix")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker thread count (default: all cores)");
}

void apply_jobs(const CommonArgs& c) {
#ifdef _OPENMP
  if (c.jobs > 0) omp_set_num_threads(c.jobs);
#else
  (void)c;
#endif
}

fs::path out_path(const CommonArgs& c, const std::string& suffix) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / (c.prefix + suffix);
}

RunManifest make_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.version = kVersion;
  m.created_utc = utc_timestamp_now();
  return m;
}

void finalize_manifest(RunManifest& m, const CommonArgs& c) {
  m.config_hash = m.compute_config_hash();
  const fs::path p = out_path(c, "_manifest.json");
  m.outputs.push_back(p.filename().string());
  m.save(p);
}

double timed(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  CommonArgs common;
  std::string model = "chain";
  int L = 8;
  double J = 1.0, h = 0.0, K = 1.0, U = 1.0, Gamma = 0.0;
  std::string basis = "full";
  int k_index = 0;
  std::string sector = "0"; // dimer winding, accepts "1" or "w=1"
  int m = 8;
};

int parse_winding(const std::string& s) {
  std::string t = s;
  if (t.rfind("w=", 0) == 0) t = t.substr(2);
  if (t == "+1") t = "1";
  if (t != "-1" && t != "0" && t != "1") throw UsageError("invalid dimer sector: " + s);
  return std::stoi(t);
}

void run_spectrum(const SpectrumArgs& a) {
  apply_jobs(a.common);
  RunManifest manifest = make_manifest("spectrum");
  manifest.set_parameter("model", a.model);
  manifest.set_parameter("L", static_cast<std::int64_t>(a.L));
  manifest.set_parameter("gamma", a.Gamma);
  manifest.set_parameter("m", static_cast<std::int64_t>(a.m));

  SparseHamiltonian H;
  double unit = 1.0;
  std::string unit_name = "absolute";
  std::string basis_str;
  if (a.model == "chain") {
    ChainParams p{a.L, a.J, a.h, a.Gamma};
    manifest.set_parameter("J", a.J);
    manifest.set_parameter("h", a.h);
    const BasisChoice basis = a.basis == "momentum" ? BasisChoice::momentum(a.k_index)
                                                    : BasisChoice::full();
    H = build_chain(p, basis);
    if (a.J != 0) {
      unit = std::abs(a.J);
      unit_name = "J";
    }
  } else if (a.model == "ladder") {
    LadderParams p{a.L, a.K, a.U, a.Gamma};
    manifest.set_parameter("K", a.K);
    manifest.set_parameter("U", a.U);
    const BasisChoice basis = a.basis == "momentum" ? BasisChoice::momentum(a.k_index)
                                                    : BasisChoice::full();
    H = build_ladder(p, basis);
    unit = a.U;
    unit_name = "U";
  } else if (a.model == "dimer") {
    const int w = parse_winding(a.sector);
    manifest.set_parameter("U", a.U);
    manifest.set_parameter("sector", std::string("w=") + std::to_string(w));
    H = build_dimer_hamiltonian(a.L, a.U, a.Gamma, w);
    unit = a.U;
    unit_name = "U";
  } else {
    throw UsageError("unknown model: " + a.model + " (chain|ladder|dimer)");
  }
  manifest.set_parameter("basis", H.basis_tag.str());
  basis_str = H.basis_tag.str();

  const int m = static_cast<int>(std::min<std::size_t>(H.dimension, static_cast<std::size_t>(a.m)));
  std::vector<double> energies;
  std::vector<double> residuals;
  const double wall = timed([&] {
    if (H.dimension <= 4096) {
      SpectrumResult spec = dense_spectrum(H, true);
      energies.assign(spec.energies.begin(), spec.energies.begin() + m);
      residuals.resize(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd v = spec.vectors->col(i);
        residuals[static_cast<std::size_t>(i)] = (H.apply(v) - energies[static_cast<std::size_t>(i)] * v).norm();
      }
    } else {
      if (m > 16) throw UsageError("iterative solver returns at most 16 levels");
      SpectrumResult spec = lowest_eigenpairs(H, m);
      energies = spec.energies;
      residuals = spec.residuals;
    }
  });
  manifest.wall_times_seconds.emplace_back("solve", wall);

  CsvTable csv("qgap.spectrum.v1 energy_unit=" + unit_name,
               {"model", "basis", "L", "level", "energy", "residual"});
  for (int i = 0; i < m; ++i)
    csv.add_row({a.model, basis_str, static_cast<std::int64_t>(a.L), static_cast<std::int64_t>(i),
                 energies[static_cast<std::size_t>(i)] / unit,
                 residuals[static_cast<std::size_t>(i)] / unit});
  const fs::path file = out_path(a.common, "_spectrum.csv");
  csv.save(file);
  manifest.outputs.push_back(file.filename().string());
  finalize_manifest(manifest, a.common);
}

// ------------------------------------------------------------- phase diagram

struct PhasediagArgs {
  CommonArgs common;
  std::vector<double> Ks{0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.5, 8.0};
  double U = 1.0;
  int L = 12;
  int k_index = 0;
  double gamma_lo = 0.0, gamma_hi = 0.0; // 0: auto bracket per K
  int b_from_L = 14;
  int coarse_per_decade = 61;
};

std::pair<double, double> auto_bracket(double K, double U, double b) {
  const double first_order = U / b + U * U / (4.0 * K * b * b * b);
  const double ref = std::max(K, first_order);
  return {0.35 * ref, 1.9 * ref};
}

void run_phasediag(const PhasediagArgs& a) {
  apply_jobs(a.common);
  if (a.Ks.empty()) throw UsageError("phasediag: empty K grid");
  RunManifest manifest = make_manifest("phasediag");
  manifest.set_parameter_list("K", a.Ks);
  manifest.set_parameter("U", a.U);
  manifest.set_parameter("L", static_cast<std::int64_t>(a.L));
  manifest.set_parameter("k", static_cast<std::int64_t>(a.k_index));
  manifest.set_parameter("b_from_L", static_cast<std::int64_t>(a.b_from_L));

  const double b = compute_b(a.b_from_L);

  CsvTable points("qgap.phasediag.points.v1 energy_unit=U",
                  {"K", "L", "k", "gamma_star", "delta_min"});
  SweepOptions sopt;
  sopt.k_index = a.k_index;
  sopt.coarse_points_per_decade = a.coarse_per_decade;
  for (double K : a.Ks) {
    auto [lo, hi] = a.gamma_lo > 0 && a.gamma_hi > a.gamma_lo
                        ? std::pair<double, double>(a.gamma_lo, a.gamma_hi)
                        : auto_bracket(K, a.U, b);
    LadderParams base{a.L, K, a.U, 0.0};
    MinGapResult res;
    const double wall = timed([&] { res = sweep_min_gap(base, a.L, lo, hi, sopt); });
    manifest.wall_times_seconds.emplace_back("K=" + format_double(K), wall);
    points.add_row({K / a.U, static_cast<std::int64_t>(a.L), static_cast<std::int64_t>(a.k_index),
                    res.gamma_star / a.U, res.delta_min / a.U});
  }

  CsvTable curves("qgap.phasediag.curves.v1 energy_unit=U",
                  {"K", "gamma_first_order", "gamma_second_order", "h_eff", "b_used"});
  for (const auto& pt : reference_curves(a.Ks, a.U, b))
    curves.add_row({pt.K / a.U, pt.gamma_first_order / a.U, pt.gamma_second_order / a.U,
                    pt.h_eff / a.U, b});

  const fs::path pf = out_path(a.common, "_points.csv");
  const fs::path cf = out_path(a.common, "_curves.csv");
  points.save(pf);
  curves.save(cf);
  manifest.outputs.push_back(pf.filename().string());
  manifest.outputs.push_back(cf.filename().string());

  // data-first plotting: a small script consuming the two CSVs
  const std::string script = std::string("#!/usr/bin/env python3\n") +
      "# regenerates the phase-diagram figure from the CSV outputs\n"
      "import csv, sys\n"
      "import matplotlib\n"
      "matplotlib.use('Agg')\n"
      "import matplotlib.pyplot as plt\n\n"
      "def load(path):\n"
      "    with open(path) as f:\n"
      "        rows = [r for r in csv.reader(f) if r and not r[0].startswith('#')]\n"
      "    head, data = rows[0], rows[1:]\n"
      "    return {h: [float(r[i]) for r in data] for i, h in enumerate(head)}\n\n"
      "pts = load('" + pf.filename().string() + "')\n"
      "cur = load('" + cf.filename().string() + "')\n"
      "fig, ax = plt.subplots(figsize=(5, 4))\n"
      "ax.plot(pts['gamma_star'], pts['K'], 'o', label='min gap (ED)')\n"
      "ax.plot(cur['gamma_first_order'], cur['K'], '--', label='first order')\n"
      "ax.plot(cur['gamma_second_order'], cur['K'], ':', label='second order')\n"
      "ax.set_xlabel('Gamma / U')\n"
      "ax.set_ylabel('K / U')\n"
      "ax.legend()\n"
      "fig.tight_layout()\n"
      "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else 'phasediag.png', dpi=150)\n";
  const fs::path sf = out_path(a.common, "_plot.py");
  {
    std::ofstream f(sf, std::ios::binary);
    f << script;
  }
  manifest.outputs.push_back(sf.filename().string());
  finalize_manifest(manifest, a.common);
}

// -------------------------------------------------------------- gap scaling

struct GapscalingArgs {
  CommonArgs common;
  std::vector<double> Ks{2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  std::vector<int> Ls{4, 6, 8, 10, 12};
  double U = 1.0;
  int k_index = 0;
  double gamma_lo = 0.0, gamma_hi = 0.0;
  int coarse_per_decade = 61;
};

void run_gapscaling(const GapscalingArgs& a) {
  apply_jobs(a.common);
  if (a.Ls.size() < 4) throw UsageError("gapscaling: need at least 4 sizes L");
  RunManifest manifest = make_manifest("gapscaling");
  manifest.set_parameter_list("K", a.Ks);
  manifest.set_parameter_list_int("L", a.Ls);
  manifest.set_parameter("U", a.U);
  manifest.set_parameter("k", static_cast<std::int64_t>(a.k_index));

  const double b = compute_b(14);
  CsvTable gaps("qgap.gapscaling.gaps.v1 energy_unit=U",
                {"K", "L", "gamma_star", "delta_min"});
  CsvTable fits("qgap.gapscaling.fits.v1 energy_unit=U",
                {"K", "amplitude", "c", "amplitude_err", "c_err", "r_squared", "n_points"});

  SweepOptions sopt;
  sopt.k_index = a.k_index;
  sopt.coarse_points_per_decade = a.coarse_per_decade;
  for (double K : a.Ks) {
    std::vector<std::pair<double, double>> pts;
    for (int L : a.Ls) {
      auto [lo, hi] = a.gamma_lo > 0 && a.gamma_hi > a.gamma_lo
                          ? std::pair<double, double>(a.gamma_lo, a.gamma_hi)
                          : auto_bracket(K, a.U, b);
      LadderParams base{L, K, a.U, 0.0};
      MinGapResult res;
      const double wall = timed([&] { res = sweep_min_gap(base, L, lo, hi, sopt); });
      manifest.wall_times_seconds.emplace_back(
          "K=" + format_double(K) + ",L=" + std::to_string(L), wall);
      gaps.add_row({K / a.U, static_cast<std::int64_t>(L), res.gamma_star / a.U,
                    res.delta_min / a.U});
      pts.emplace_back(static_cast<double>(L), res.delta_min);
    }
    const FitResult fit = fit_gap_scaling(pts, FitModel::exponential);
    fits.add_row({K / a.U, fit.amplitude / a.U, fit.rate, fit.amplitude_err / a.U, fit.rate_err,
                  fit.r_squared, static_cast<std::int64_t>(fit.n_points)});
  }

  const fs::path gf = out_path(a.common, "_gaps.csv");
  const fs::path ff = out_path(a.common, "_fits.csv");
  gaps.save(gf);
  fits.save(ff);
  manifest.outputs.push_back(gf.filename().string());
  manifest.outputs.push_back(ff.filename().string());
  finalize_manifest(manifest, a.common);
}

// ------------------------------------------------------------------ fermion

struct FermionArgs {
  CommonArgs common;
  std::vector<int> Ls{8};
  double J = -1.0; // x-coupled convention; -1 is the antiferromagnetic chain
  double Gamma = 0.5;
};

void run_fermion(const FermionArgs& a) {
  apply_jobs(a.common);
  RunManifest manifest = make_manifest("fermion");
  manifest.set_parameter_list_int("L", a.Ls);
  manifest.set_parameter("J", a.J);
  manifest.set_parameter("gamma", a.Gamma);

  const double unit = a.J != 0 ? std::abs(a.J) : 1.0;
  CsvTable csv("qgap.fermion.v1 energy_unit=J",
               {"L", "J", "gamma", "e0", "e1", "gap", "ground_label", "excited_label"});
  for (int L : a.Ls) {
    const ManyBodyLevels lv = many_body_spectrum(a.J, a.Gamma, L);
    csv.add_row({static_cast<std::int64_t>(L), a.J, a.Gamma, lv.ground / unit,
                 lv.first_excited / unit, lv.gap / unit, lv.ground_label, lv.excited_label});
  }
  const fs::path f = out_path(a.common, "_fermion.csv");
  csv.save(f);
  manifest.outputs.push_back(f.filename().string());
  finalize_manifest(manifest, a.common);
}

// -------------------------------------------------------------------- dimer

struct DimerArgs {
  CommonArgs common;
  std::vector<int> Ls{4, 6, 8, 10, 12};
  double U = 1.0;
};

void run_dimer(const DimerArgs& a) {
  apply_jobs(a.common);
  RunManifest manifest = make_manifest("dimer");
  manifest.set_parameter_list_int("L", a.Ls);
  manifest.set_parameter("U", a.U);

  CsvTable csv("qgap.dimer.v1 energy_unit=U",
               {"L", "count_w0", "count_w_plus", "count_w_minus", "b_L", "gamma_c",
                "slope_above"});
  for (int L : a.Ls) {
    const auto coverings = enumerate_coverings(L);
    std::int64_t n0 = 0, np = 0, nm = 0;
    for (const auto& c : coverings) {
      if (c.winding == 0) ++n0;
      else if (c.winding == 1) ++np;
      else ++nm;
    }
    if (L % 2 == 0) {
      const double bL = compute_b(L);
      const LevelCrossing cross = locate_level_crossing(L, a.U);
      csv.add_row({static_cast<std::int64_t>(L), n0, np, nm, bL, cross.gamma_c / a.U,
                   cross.slope_above});
    } else {
      csv.add_row({static_cast<std::int64_t>(L), n0, np, nm, 0.0, 0.0, 0.0});
    }
  }
  const fs::path f = out_path(a.common, "_dimer.csv");
  csv.save(f);
  manifest.outputs.push_back(f.filename().string());
  finalize_manifest(manifest, a.common);
}

// ------------------------------------------------------------------- anneal

struct AnnealArgs {
  CommonArgs common;
  std::vector<int> Ls{8, 12, 16, 24, 32};
  double K = 5.0, U = 1.0;
  double T_initial = 3.0, T_final = 0.05;
  int sweeps = 10000;
  std::string shape = "geometric";
  int seeds = 100;
  std::uint64_t seed = 1;
};

void run_anneal(const AnnealArgs& a) {
  apply_jobs(a.common);
  RunManifest manifest = make_manifest("anneal");
  manifest.set_parameter_list_int("L", a.Ls);
  manifest.set_parameter("K", a.K);
  manifest.set_parameter("U", a.U);
  manifest.set_parameter("T_initial", a.T_initial);
  manifest.set_parameter("T_final", a.T_final);
  manifest.set_parameter("sweeps", static_cast<std::int64_t>(a.sweeps));
  manifest.set_parameter("shape", a.shape);
  manifest.set_parameter("seeds", static_cast<std::int64_t>(a.seeds));
  manifest.set_parameter("seed", static_cast<std::int64_t>(a.seed));

  AnnealSchedule sched;
  sched.T_initial = a.T_initial;
  sched.T_final = a.T_final;
  sched.n_sweeps = a.sweeps;
  if (a.shape == "geometric") sched.shape = AnnealSchedule::Shape::geometric;
  else if (a.shape == "linear") sched.shape = AnnealSchedule::Shape::linear;
  else throw UsageError("anneal: shape is geometric|linear");

  LadderParams base{a.Ls.front(), a.K, a.U, 0.0};
  ScalingStudyResult study;
  const double wall =
      timed([&] { study = scaling_study(base, a.Ls, sched, a.seeds, a.seed); });
  manifest.wall_times_seconds.emplace_back("study", wall);

  CsvTable reps("qgap.anneal.replicas.v1 energy_unit=U",
                {"seed", "L", "K", "U", "first_passage", "final_energy"});
  for (std::size_t li = 0; li < a.Ls.size(); ++li)
    for (int r = 0; r < a.seeds; ++r) {
      const auto& o = study.outcomes[li * static_cast<std::size_t>(a.seeds) +
                                     static_cast<std::size_t>(r)];
      reps.add_row({static_cast<std::int64_t>(o.seed), static_cast<std::int64_t>(a.Ls[li]),
                    a.K / a.U, a.U, o.first_passage_sweep
                                        ? static_cast<std::int64_t>(*o.first_passage_sweep)
                                        : std::int64_t{-1},
                    o.final_energy / a.U});
    }

  CsvTable summary("qgap.anneal.summary.v1",
                   {"L", "n_seeds", "n_success", "median", "q25", "q75", "included_in_fit"});
  for (const auto& row : study.rows)
    summary.add_row({static_cast<std::int64_t>(row.L), static_cast<std::int64_t>(row.n_seeds),
                     static_cast<std::int64_t>(row.n_success), row.median_sweeps, row.q25, row.q75,
                     static_cast<std::int64_t>(row.included_in_fit ? 1 : 0)});

  const fs::path rf = out_path(a.common, "_replicas.csv");
  const fs::path sf = out_path(a.common, "_summary.csv");
  reps.save(rf);
  summary.save(sf);
  manifest.outputs.push_back(rf.filename().string());
  manifest.outputs.push_back(sf.filename().string());
  manifest.set_parameter("fit_exponent", study.exponent);
  manifest.set_parameter("fit_exponent_bootstrap_err", study.exponent_err_bootstrap);
  manifest.set_parameter("fit_r_squared", study.fit.r_squared);
  finalize_manifest(manifest, a.common);
}

} // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"spectral toolkit for gap scaling at first-order transitions"};
  app.name("qgap");
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read defaults from an INI/TOML config file");
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "lowest levels of one model instance");
  spectrum->set_help_flag("--help", "print help"); // keep --h free for the staggered field
  add_common(spectrum, sa.common, "qgap");
  spectrum->add_option("--model", sa.model, "chain|ladder|dimer")->required();
  spectrum->add_option("--L", sa.L, "system length (rungs for ladder/dimer)")->required();
  spectrum->add_option("--J", sa.J, "chain coupling")->capture_default_str();
  spectrum->add_option("--h", sa.h, "chain staggered field")->capture_default_str();
  spectrum->add_option("--K", sa.K, "ladder coupling")->capture_default_str();
  spectrum->add_option("--U", sa.U, "ladder/dimer field scale")->capture_default_str();
  spectrum->add_option("--gamma", sa.Gamma, "transverse/resonance field")->required();
  spectrum->add_option("--basis", sa.basis, "full|momentum")->capture_default_str();
  spectrum->add_option("--k", sa.k_index, "momentum index")->capture_default_str();
  spectrum->add_option("--sector", sa.sector, "dimer winding sector, e.g. w=1")
      ->capture_default_str();
  spectrum->add_option("--m", sa.m, "number of levels")->capture_default_str();

  PhasediagArgs pa;
  auto* phasediag = app.add_subcommand("phasediag", "minimum-gap phase diagram of the ladder");
  add_common(phasediag, pa.common, "phasediag");
  phasediag->add_option("--K", pa.Ks, "K grid")->expected(-1);
  phasediag->add_option("--U", pa.U, "field scale")->capture_default_str();
  phasediag->add_option("--L", pa.L, "ladder length")->capture_default_str();
  phasediag->add_option("--k", pa.k_index, "momentum sector")->capture_default_str();
  phasediag->add_option("--gamma-lo", pa.gamma_lo, "bracket low edge (0: auto per K)");
  phasediag->add_option("--gamma-hi", pa.gamma_hi, "bracket high edge (0: auto per K)");
  phasediag->add_option("--b-from-L", pa.b_from_L, "dimer length used to measure b")
      ->capture_default_str();
  phasediag->add_option("--coarse-per-decade", pa.coarse_per_decade,
                        "coarse scan points per decade")
      ->capture_default_str();

  GapscalingArgs ga;
  auto* gapscaling = app.add_subcommand("gapscaling", "minimum gap vs L with exponential fits");
  add_common(gapscaling, ga.common, "gapscaling");
  gapscaling->add_option("--K", ga.Ks, "K values")->expected(-1);
  gapscaling->add_option("--L", ga.Ls, "ladder lengths (need >= 4)")->expected(-1);
  gapscaling->add_option("--U", ga.U, "field scale")->capture_default_str();
  gapscaling->add_option("--k", ga.k_index, "momentum sector")->capture_default_str();
  gapscaling->add_option("--gamma-lo", ga.gamma_lo, "bracket low edge (0: auto per K)");
  gapscaling->add_option("--gamma-hi", ga.gamma_hi, "bracket high edge (0: auto per K)");
  gapscaling->add_option("--coarse-per-decade", ga.coarse_per_decade,
                         "coarse scan points per decade")
      ->capture_default_str();

  FermionArgs fa;
  auto* fermion = app.add_subcommand("fermion", "free-fermion chain levels");
  add_common(fermion, fa.common, "fermion");
  fermion->add_option("--L", fa.Ls, "chain lengths")->expected(-1);
  fermion->add_option("--J", fa.J, "coupling (x-coupled convention)")->capture_default_str();
  fermion->add_option("--gamma", fa.Gamma, "transverse field")->capture_default_str();

  DimerArgs da;
  auto* dimer = app.add_subcommand("dimer", "dimer sector counts, b_L, level crossing");
  add_common(dimer, da.common, "dimer");
  dimer->add_option("--L", da.Ls, "ladder lengths")->expected(-1);
  dimer->add_option("--U", da.U, "staggered-sector penalty scale")->capture_default_str();

  AnnealArgs aa;
  auto* anneal = app.add_subcommand("anneal", "simulated-annealing first-passage study");
  add_common(anneal, aa.common, "anneal");
  anneal->add_option("--L", aa.Ls, "ladder lengths")->expected(-1);
  anneal->add_option("--K", aa.K, "coupling")->capture_default_str();
  anneal->add_option("--U", aa.U, "field scale")->capture_default_str();
  anneal->add_option("--T-initial", aa.T_initial, "initial temperature")->capture_default_str();
  anneal->add_option("--T-final", aa.T_final, "final temperature")->capture_default_str();
  anneal->add_option("--sweeps", aa.sweeps, "schedule length in sweeps")->capture_default_str();
  anneal->add_option("--shape", aa.shape, "geometric|linear")->capture_default_str();
  anneal->add_option("--seeds", aa.seeds, "replica count")->capture_default_str();
  anneal->add_option("--seed", aa.seed, "global seed")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    if (*spectrum) run_spectrum(sa);
    if (*phasediag) run_phasediag(pa);
    if (*gapscaling) run_gapscaling(ga);
    if (*fermion) run_fermion(fa);
    if (*dimer) run_dimer(da);
    if (*anneal) run_anneal(aa);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace qgap::cli
