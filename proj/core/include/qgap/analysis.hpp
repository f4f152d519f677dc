#pragma once

#include <span>
#include <string>
#include <vector>

#include "qgap/models.hpp"
#include "qgap/spectral.hpp"

namespace qgap {

/// One solved parameter point of a gap sweep.
struct SweepRecord {
  std::string model;
  int L = 0;
  double K = 0, U = 0, Gamma = 0;
  int k_index = 0;
  double e0 = 0;
  double gap_raw = 0;
  double residual_max = 0;
  double wall_seconds = 0;
};

struct MinGapResult {
  double gamma_star = 0;
  double delta_min = 0;
  std::vector<SweepRecord> records; // sorted by Gamma
};

struct SweepOptions {
  int k_index = 0;
  int coarse_points_per_decade = 61; // log-spaced scan density before refinement
  int min_coarse_points = 15;
  double golden_rel_tol = 1e-4; // relative width of the final Gamma bracket
  int lanczos_max_basis = 128;
};

/// Minimum of the k-sector gap over a Gamma bracket: coarse log-grid scan,
/// then golden-section refinement. Solves share the Gamma-independent sector
/// structure and warm-start from the previous ground vector.
MinGapResult sweep_min_gap(const LadderParams& base, int L, double gamma_lo, double gamma_hi,
                           const SweepOptions& opt = {});

enum class FitModel { exponential, power };

/// Least-squares fit on log-transformed data:
///   exponential: Delta = A e^{-c L}   (log Delta vs L)
///   power:       Delta = A L^{-p}     (log Delta vs log L)
/// rate is c (or p) with its standard error from the linear regression.
struct FitResult {
  FitModel model{};
  double amplitude = 0, rate = 0;
  double amplitude_err = 0, rate_err = 0;
  double r_squared = 0;
  int n_points = 0;
};

FitResult fit_gap_scaling(std::span<const std::pair<double, double>> size_gap, FitModel model);

/// Gap of the effective domain-wall hopping chain, 2*Gamma*(1 - cos(pi/L)).
double hopping_chain_gap(int L, double Gamma);

/// Its unique ground state energy, -L*J + 2*J - 2*Gamma.
double hopping_chain_ground_energy(int L, double J, double Gamma);

struct ReferenceCurvePoint {
  double K = 0;
  double gamma_first_order = 0;  // U/b + U^2/(4 K b^3)
  double gamma_second_order = 0; // K (leading order)
  double h_eff = 0;              // 2 K Gamma^2 / U^2 at Gamma = K (diagnostic)
};

std::vector<ReferenceCurvePoint> reference_curves(std::span<const double> Ks, double U, double b);

struct MagnetizationRow {
  double h = 0;
  double m = 0;
  double e0 = 0;
};

/// Staggered moment of the ED ground state across a table of longitudinal
/// fields; the finite-size signature of the first-order jump at h = 0.
std::vector<MagnetizationRow> chain_first_order_signature(int L, double J, double Gamma,
                                                          std::span<const double> h_values);

} // namespace qgap
