#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qgap {

/// Free-fermion solution of the periodic quantum Ising chain
///   H = -J sum_i sx_i sx_{i+1} - Gamma sum_i sz_i
/// via the Majorana Jordan-Wigner transformation. The global parity
/// P = prod_i sz_i splits the chain into quadratic sectors with periodic
/// (P=-1) or antiperiodic (P=+1) boundary conditions.
///
/// The sz-coupled chain of the staggered-field model maps onto this form by
/// the x<->z rotation with J -> -J; spectra are identical.

/// Positive-energy mode dispersion, eps(k) = sqrt(J^2 + Gamma^2 - 2 J Gamma cos k).
double dispersion(double J, double Gamma, double k);

/// Same band in the domain-wall convention (k shifted by pi).
double dispersion_domain_wall(double J, double Gamma, double q);

/// Allowed momenta: k = 2*pi*n/L (P=-1) or 2*pi*(n+1/2)/L (P=+1), n=0..L-1.
std::vector<double> sector_momenta(int L, int parity);

/// Coefficient matrix of H = (i/4) gamma^T h gamma in the Majorana ordering
/// (gamma_1, gamma_1', gamma_2, gamma_2', ...); the boundary bond carries -P.
struct QuadraticMajoranaForm {
  Eigen::MatrixXd h; // 2L x 2L, exactly antisymmetric by construction
  int parity = +1;
};

QuadraticMajoranaForm build_majorana_form(double J, double Gamma, int L, int parity);

/// Pfaffian of a real antisymmetric matrix by Householder tridiagonalization.
double pfaffian(const Eigen::MatrixXd& h);

/// Sign of the Pfaffian; throws NumericalError when a near-zero mode makes
/// the sign ambiguous (critical points).
int pfaffian_sign(const Eigen::MatrixXd& h);

/// Parity of the quadratic vacuum in the given sector, sgn(Pf(h)).
int vacuum_parity(double J, double Gamma, int L, int parity);

struct FermionSolution {
  std::vector<double> momenta;
  std::vector<double> mode_energies;  // eps(k) >= 0, matching momenta
  double vacuum_energy = 0;           // -sum_k eps(k)
  int vacuum_parity = +1;
  double sector_ground_energy = 0;    // vacuum, or vacuum + 2 min eps if parity-mismatched
};

FermionSolution solve_sector(double J, double Gamma, int L, int parity);

struct ManyBodyLevels {
  double ground = 0;
  double first_excited = 0;
  double gap = 0;
  std::string ground_label;
  std::string excited_label;
};

/// Two lowest many-body levels across both parity sectors.
ManyBodyLevels many_body_spectrum(double J, double Gamma, int L);

} // namespace qgap
