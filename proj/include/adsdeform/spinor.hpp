#pragma once
// Spinors on the spinless extension domain in the chart (a, t, s): a transversal, (t, s) the R-orbit chart.
// The frame is built from the fields generating the right action of R, which commute with tau, so the
// spin lift of tau is trivial in this frame and the deformed module acts componentwise.

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "adsdeform/star.hpp"
#include "adsdeform/udf.hpp"

namespace adsdeform {

using Mat2c = Eigen::Matrix2cd;

// gamma_0 = sigma_x, gamma_1 = sigma_z, gamma_2 = [[0,1],[-1,0]]: {gamma_i, gamma_j} = 2 eta_ij, eta = diag(1,1,-1).
std::array<Mat2c, 3> gammas();
constexpr std::array<double, 3> kEta{1, 1, -1};
// A gamma_i = -gamma_i^dagger A; the spinor pairing is int Psi^dagger A Phi dvol.
Mat2c krein_form();

using SpinorField = std::array<Field, 2>;
using EndoField = std::array<std::array<Field, 2>, 2>;

// Componentwise deformed actions on one orbit slice.
SpinorField right_action(const StarEngine& e, const SpinorField& psi, const Field& a);  // Psi * a
SpinorField left_action(const StarEngine& e, const Field& a, const SpinorField& psi);   // a * Psi
SpinorField endo_action(const StarEngine& e, const EndoField& g, const SpinorField& psi);  // (g * Psi)_i = g_ij * Psi_j
// (Psi * G)_i = Psi_j * G_ij: reduces to G Psi at theta = 0.
SpinorField right_endo(const StarEngine& e, const SpinorField& psi, const EndoField& g);

// Spectral derivatives on the chart grid: axis 0 = t, axis 1 = s.
Field grid_derivative(const StarGrid& g, const Field& f, int axis);

// Chart vector fields on one slice, as first-order operators on grid fields.
enum class ChartField { RIGHT_H, RIGHT_E, LEFT_E, DILATION };
// RIGHT_H = d_t and RIGHT_E = e^-t d_s generate rho -> exp(eps Y) rho (commute with tau);
// LEFT_E = d_s generates rho -> rho exp(eps E) (tau itself); DILATION = s d_s. The last two are controls.
Field apply_field(const StarGrid& g, ChartField x, const Field& f);

struct DerivationReport {
  double defect = 0;  // max |X(a*b) - X a * b - a * X b| / max |X a * b + a * X b| over the interior
};
DerivationReport derivation_check(const StarEngine& e, ChartField x, const Field& a, const Field& b);

// Orthonormal frame e0 = d_a, (e1, e2) = phi(a) Z (Y_h, Y_e), phi = 1 / (sqrt8 cosh(a / (2 sqrt2))).
struct DiracFrame {
  Eigen::Matrix2d orbit_gram;  // Killing orbit metric of (Y_h, Y_e), constant along the orbit
  Eigen::Matrix2d z;           // Z (-orbit_gram) Z^T = diag(1, -1)
  static DiracFrame build(const BhtzRAction& act, long sheet = 0);
  double phi(double a) const;
  double dphi(double a) const;
  // c[i][j][k] = g([e_i, e_j], e_k) at transversal a.
  std::array<std::array<std::array<double, 3>, 3>, 3> structure(double a) const;
  // w[i][j][k] = g(nabla_{e_i} e_j, e_k), Koszul.
  std::array<std::array<std::array<double, 3>, 3>, 3> connection(double a) const;
  // Gamma_i = -1/4 sum_jk w_ijk eta^jj eta^kk gamma_j gamma_k.
  std::array<Mat2c, 3> spin_connection(double a) const;
  // Coordinate density of the metric volume in (a, t, s).
  double volume_density(double a, double t) const;
};

// Orbit Gram matrix of the right-action fields at chart point rho of an orbit (finite differences through
// the group action); used to verify constancy.
Eigen::Matrix2d orbit_gram_at(const DomainOrbit& orbit, const ANElement& rho);

// Spinor sampled on three transversal slices a0 - da, a0, a0 + da.
struct SlicedSpinor {
  double a0 = 0, da = 1e-4;
  std::array<SpinorField, 3> slices;
};

// D Psi = sum_i eta^ii gamma_i (e_i + Gamma_i) Psi on the middle slice.
SpinorField dirac(const DiracFrame& fr, const StarGrid& g, const SlicedSpinor& psi);

struct DiracCommutatorReport {
  double defect = 0;        // max |D(Psi*a) - (D Psi)*a - Psi*(Da)| / max |Psi*(Da)|
  double bound_ratio = 0;   // max |[D,a]Psi| / (max |Da| max |Psi|)
};
// a and Psi given on the three slices; Da = sum_i eta^ii gamma_i (e_i a).
DiracCommutatorReport dirac_commutator_check(const DiracFrame& fr, const StarEngine& e,
                                             const std::array<Field, 3>& a, const SlicedSpinor& psi);

// Hamiltonian of a leafwise field X = (X^t, X^s) on a slice for omega = dt ^ ds with i_X omega = -d lambda,
// so that X f = {lambda, f}; integrated along s from the window edge. Throws std::invalid_argument when i_X omega is not closed, i.e.
// when the t-derivative of the integral misses X^s by more than tol relative.
Field hamiltonian(const StarGrid& g, const Field& xt, const Field& xs, double tol = 1e-6);
// Hamiltonian field of lambda: X^t = -d_s lambda, X^s = d_t lambda.
std::array<Field, 2> hamiltonian_field(const StarGrid& g, const Field& lambda);
// Gamma(X) for a leafwise field X = X^t d_t + X^s d_s on the slice at a.
EndoField leaf_connection(const DiracFrame& fr, const StarGrid& g, double a, const Field& xt, const Field& xs);

// (nabla_X)^theta Psi = (i/theta)(lambda * Psi - Psi * lambda) + Psi * Gamma(X).
SpinorField deformed_covariant_derivative(const StarEngine& e, const Field& lambda, const EndoField& gamma_x,
                                          const SpinorField& psi);

}  // namespace adsdeform
