#include "qgap/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "qgap/errors.hpp"

namespace qgap {

namespace {

struct LinearFit {
  double intercept = 0, slope = 0;
  double intercept_err = 0, slope_err = 0;
  double r_squared = 0;
};

LinearFit linear_least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double xbar = sx / n, ybar = sy / n;
  const double Sxx = sxx - n * xbar * xbar;
  const double Sxy = sxy - n * xbar * ybar;
  LinearFit fit;
  fit.slope = Sxy / Sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  const double dof = std::max(1.0, n - 2.0);
  const double s2 = ss_res / dof;
  fit.slope_err = std::sqrt(s2 / Sxx);
  fit.intercept_err = std::sqrt(s2 * (1.0 / n + xbar * xbar / Sxx));
  return fit;
}

} // namespace

MinGapResult sweep_min_gap(const LadderParams& base, int L, double gamma_lo, double gamma_hi,
                           const SweepOptions& opt) {
  if (!(gamma_lo > 0) || !(gamma_hi > gamma_lo))
    throw UsageError("sweep_min_gap: need 0 < gamma_lo < gamma_hi");

  const LadderSectorStructure structure = build_ladder_sector_structure(L, opt.k_index);

  Eigen::VectorXd last_ground; // warm start carried along the scan
  std::map<double, SweepRecord> solved;

  auto gap_at = [&](double gamma) -> double {
    if (auto it = solved.find(gamma); it != solved.end()) return it->second.gap_raw;
    LadderParams p = base;
    p.L = L;
    p.Gamma = gamma;
    const auto t0 = std::chrono::steady_clock::now();
    SparseHamiltonian H = assemble_ladder(structure, p);
    LanczosOptions lopt;
    lopt.max_basis = opt.lanczos_max_basis;
    lopt.warm_start = last_ground.size() ? &last_ground : nullptr;
    SpectrumResult spec = lowest_eigenpairs(H, 2, lopt);
    if (spec.vectors) last_ground = spec.vectors->col(0);
    const auto t1 = std::chrono::steady_clock::now();

    SweepRecord rec;
    rec.model = "ladder";
    rec.L = L;
    rec.K = p.K;
    rec.U = p.U;
    rec.Gamma = gamma;
    rec.k_index = opt.k_index;
    rec.e0 = spec.energies[0];
    rec.gap_raw = spec.energies[1] - spec.energies[0];
    rec.residual_max = *std::max_element(spec.residuals.begin(), spec.residuals.end());
    rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    solved.emplace(gamma, rec);
    return rec.gap_raw;
  };

  // Coarse scan: log-spaced, opt.coarse_points_per_decade per decade of bracket.
  const double decades = std::log10(gamma_hi / gamma_lo);
  const int n_coarse = std::max(opt.min_coarse_points,
                                static_cast<int>(std::ceil(decades * opt.coarse_points_per_decade)));
  std::vector<double> grid(static_cast<std::size_t>(n_coarse));
  for (int i = 0; i < n_coarse; ++i)
    grid[static_cast<std::size_t>(i)] =
        gamma_lo * std::pow(gamma_hi / gamma_lo, static_cast<double>(i) / (n_coarse - 1));

  std::size_t imin = 0;
  double gmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = gap_at(grid[i]);
    if (g < gmin) {
      gmin = g;
      imin = i;
    }
  }
  if (imin == 0 || imin + 1 == grid.size()) {
    std::string table = "coarse scan (Gamma, gap):";
    for (std::size_t i = 0; i < grid.size(); ++i)
      table += "\n  " + std::to_string(grid[i]) + "  " + std::to_string(gap_at(grid[i]));
    throw NumericalError("sweep_min_gap: no interior minimum in bracket [" +
                         std::to_string(gamma_lo) + ", " + std::to_string(gamma_hi) + "]\n" + table);
  }

  // Golden-section refinement on the bracketing triple.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[imin - 1], b = grid[imin + 1];
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = gap_at(c), fd = gap_at(d);
  while ((b - a) > opt.golden_rel_tol * 0.5 * (a + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gap_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gap_at(d);
    }
  }

  MinGapResult out;
  out.gamma_star = fc < fd ? c : d;
  out.delta_min = std::min(fc, fd);
  for (auto& [gamma, rec] : solved) out.records.push_back(rec);
  return out;
}

FitResult fit_gap_scaling(std::span<const std::pair<double, double>> size_gap, FitModel model) {
  if (size_gap.size() < 4) throw UsageError("fit_gap_scaling: need at least 4 sizes");
  std::vector<double> x(size_gap.size()), y(size_gap.size());
  for (std::size_t i = 0; i < size_gap.size(); ++i) {
    const auto [L, gap] = size_gap[i];
    if (!(gap > 0)) throw UsageError("fit_gap_scaling: gaps must be positive");
    x[i] = model == FitModel::exponential ? L : std::log(L);
    y[i] = std::log(gap);
  }
  const LinearFit lin = linear_least_squares(x, y);
  FitResult out;
  out.model = model;
  out.amplitude = std::exp(lin.intercept);
  out.rate = -lin.slope;
  out.amplitude_err = out.amplitude * lin.intercept_err;
  out.rate_err = lin.slope_err;
  out.r_squared = lin.r_squared;
  out.n_points = static_cast<int>(size_gap.size());
  return out;
}

double hopping_chain_gap(int L, double Gamma) {
  if (L < 2) throw UsageError("hopping_chain_gap: L >= 2");
  return 2.0 * Gamma * (1.0 - std::cos(M_PI / L));
}

double hopping_chain_ground_energy(int L, double J, double Gamma) {
  return -L * J + 2.0 * J - 2.0 * Gamma;
}

std::vector<ReferenceCurvePoint> reference_curves(std::span<const double> Ks, double U, double b) {
  if (!(U > 0) || !(b > 0)) throw UsageError("reference_curves: U > 0 and b > 0 required");
  std::vector<ReferenceCurvePoint> out;
  out.reserve(Ks.size());
  for (double K : Ks) {
    if (!(K > 0)) throw UsageError("reference_curves: K > 0 required");
    ReferenceCurvePoint pt;
    pt.K = K;
    pt.gamma_first_order = U / b + U * U / (4.0 * K * b * b * b);
    pt.gamma_second_order = K;
    pt.h_eff = 2.0 * K * (K * K) / (U * U); // h_eff = 2 K Gamma^2 / U^2 at Gamma = K
    out.push_back(pt);
  }
  return out;
}

std::vector<MagnetizationRow> chain_first_order_signature(int L, double J, double Gamma,
                                                          std::span<const double> h_values) {
  if (L > 12) throw CapacityError("chain_first_order_signature: dense ED limited to L <= 12");
  std::vector<MagnetizationRow> out;
  out.reserve(h_values.size());
  for (double h : h_values) {
    ChainParams p{L, J, h, Gamma};
    SparseHamiltonian H = build_chain(p, BasisChoice::full());
    SpectrumResult spec = dense_spectrum(H, true);
    const Eigen::VectorXd ground = spec.vectors->col(0);
    MagnetizationRow row;
    row.h = h;
    row.e0 = spec.energies[0];
    row.m = staggered_magnetization(std::span<const double>(ground.data(),
                                                            static_cast<std::size_t>(ground.size())),
                                    L);
    out.push_back(row);
  }
  return out;
}

} // namespace qgap
