#include "qgap/fermion.hpp"

#include <cmath>

#include "qgap/errors.hpp"

namespace qgap {

double dispersion(double J, double Gamma, double k) {
  return std::sqrt(J * J + Gamma * Gamma - 2.0 * J * Gamma * std::cos(k));
}

double dispersion_domain_wall(double J, double Gamma, double q) {
  return dispersion(J, Gamma, q + M_PI);
}

std::vector<double> sector_momenta(int L, int parity) {
  if (L < 2) throw UsageError("sector_momenta: L >= 2 required");
  if (parity != +1 && parity != -1) throw UsageError("sector_momenta: parity is +1 or -1");
  std::vector<double> ks(static_cast<std::size_t>(L));
  const double offset = parity == +1 ? 0.5 : 0.0;
  for (int n = 0; n < L; ++n) ks[static_cast<std::size_t>(n)] = 2.0 * M_PI * (n + offset) / L;
  return ks;
}

QuadraticMajoranaForm build_majorana_form(double J, double Gamma, int L, int parity) {
  if (L < 2) throw UsageError("build_majorana_form: L >= 2 required");
  if (parity != +1 && parity != -1) throw UsageError("build_majorana_form: parity is +1 or -1");
  const int n = 2 * L;
  QuadraticMajoranaForm form;
  form.parity = parity;
  form.h = Eigen::MatrixXd::Zero(n, n);
  // c * i * g_a g_b  contributes  h_ab += 2c, h_ba -= 2c
  auto add = [&](int a, int b, double c) {
    form.h(a, b) += 2.0 * c;
    form.h(b, a) -= 2.0 * c;
  };
  // H = J i sum_{j<L} g'_j g_{j+1} - J P i g'_L g_1 + Gamma i sum_j g_j g'_j
  for (int j = 0; j < L; ++j) add(2 * j, 2 * j + 1, Gamma);
  for (int j = 0; j + 1 < L; ++j) add(2 * j + 1, 2 * (j + 1), J);
  add(2 * (L - 1) + 1, 0, -J * parity);
  return form;
}

namespace {

// Householder reduction of a skew-symmetric matrix to tridiagonal form,
// tracking the determinant sign of the accumulated orthogonal transform.
// Pf(A) = det(Q) * prod_i T(2i, 2i+1).
struct SkewTridiag {
  Eigen::VectorXd super; // T(i, i+1), length n-1
  int det_q = 1;
  double scale = 0; // max |A_ij| on input
};

SkewTridiag skew_tridiagonalize(Eigen::MatrixXd A) {
  const int n = static_cast<int>(A.rows());
  SkewTridiag out;
  out.scale = A.cwiseAbs().maxCoeff();
  for (int j = 0; j + 2 < n; ++j) {
    Eigen::VectorXd x = A.col(j).segment(j + 1, n - j - 1);
    const double xn = x.norm();
    if (xn == 0.0) continue;
    double alpha = x[0] >= 0 ? -xn : xn;
    Eigen::VectorXd v = x;
    v[0] -= alpha;
    const double vn2 = v.squaredNorm();
    if (vn2 <= 1e-300) continue;
    // P = I - 2 v v^T / (v^T v) on the trailing block. For skew A the update
    // P A P = A + v w^T - w v^T with w = (2/v^T v) A v (the v^T A v term vanishes).
    auto block = A.bottomRightCorner(n - j - 1, n - j - 1);
    Eigen::VectorXd w = block * v * (2.0 / vn2);
    block += v * w.transpose();
    block -= w * v.transpose();
    // also rotate the coupling column A(j, j+1..): row j segment
    Eigen::VectorXd r = A.row(j).segment(j + 1, n - j - 1);
    r -= v * (2.0 / vn2) * v.dot(r);
    A.row(j).segment(j + 1, n - j - 1) = r;
    A.col(j).segment(j + 1, n - j - 1) = -r;
    out.det_q = -out.det_q;
  }
  out.super.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) out.super[i] = A(i, i + 1);
  return out;
}

} // namespace

double pfaffian(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  if (n % 2 != 0 || h.cols() != n) throw UsageError("pfaffian: even-dimensional square matrix");
  if ((h + h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw UsageError("pfaffian: matrix is not antisymmetric");
  SkewTridiag t = skew_tridiagonalize(h);
  double pf = t.det_q;
  for (int i = 0; i + 1 < n; i += 2) pf *= t.super[i];
  return pf;
}

int pfaffian_sign(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  SkewTridiag t = skew_tridiagonalize(h);
  int sign = t.det_q;
  for (int i = 0; i + 1 < n; i += 2) {
    const double v = t.super[i];
    if (std::abs(v) <= 1e-12 * t.scale)
      throw NumericalError("pfaffian_sign: near-zero mode, sign ambiguous (critical point?)");
    sign *= v > 0 ? 1 : -1;
  }
  return sign;
}

int vacuum_parity(double J, double Gamma, int L, int parity) {
  return pfaffian_sign(build_majorana_form(J, Gamma, L, parity).h);
}

FermionSolution solve_sector(double J, double Gamma, int L, int parity) {
  FermionSolution sol;
  sol.momenta = sector_momenta(L, parity);
  sol.mode_energies.resize(sol.momenta.size());
  double vac = 0.0;
  double min_eps = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sol.momenta.size(); ++i) {
    const double e = dispersion(J, Gamma, sol.momenta[i]);
    sol.mode_energies[i] = e;
    vac -= e;
    min_eps = std::min(min_eps, e);
  }
  sol.vacuum_energy = vac;
  sol.vacuum_parity = vacuum_parity(J, Gamma, L, parity);
  sol.sector_ground_energy = sol.vacuum_parity == parity ? vac : vac + 2.0 * min_eps;
  return sol;
}

ManyBodyLevels many_body_spectrum(double J, double Gamma, int L) {
  const FermionSolution plus = solve_sector(J, Gamma, L, +1);
  const FermionSolution minus = solve_sector(J, Gamma, L, -1);
  auto label = [](int parity, const FermionSolution& s) {
    std::string l = parity == +1 ? "P=+1 " : "P=-1 ";
    return l + (s.vacuum_parity == parity ? "vacuum" : "vacuum + one pair");
  };
  ManyBodyLevels out;
  if (plus.sector_ground_energy <= minus.sector_ground_energy) {
    out.ground = plus.sector_ground_energy;
    out.first_excited = minus.sector_ground_energy;
    out.ground_label = label(+1, plus);
    out.excited_label = label(-1, minus);
  } else {
    out.ground = minus.sector_ground_energy;
    out.first_excited = plus.sector_ground_energy;
    out.ground_label = label(-1, minus);
    out.excited_label = label(+1, plus);
  }
  out.gap = out.first_excited - out.ground;
  return out;
}

} // namespace qgap
