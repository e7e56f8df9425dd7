#pragma once
// sl(2,R), SL(2,R) and the universal cover, in global Iwasawa coordinates.

#include <array>
#include <cmath>
#include <numbers>

namespace adsdeform {

constexpr double kPi = std::numbers::pi;

// Plain 2x2 real matrix, row major.
struct Mat2 {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  static Mat2 identity() { return {}; }
  double det() const { return m00 * m11 - m01 * m10; }
  double trace() const { return m00 + m11; }
  Mat2 inverse() const;  // assumes det == 1
  double frobenius() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);

// X = h*H0 + e*E + f*F with H0 = diag(1/2,-1/2), E = [[0,1],[0,0]], F = [[0,0],[1,0]].
struct AlgebraVector {
  double h = 0, e = 0, f = 0;

  static AlgebraVector H0() { return {1, 0, 0}; }
  static AlgebraVector E() { return {0, 1, 0}; }
  static AlgebraVector F() { return {0, 0, 1}; }
  // Killing-unit split element, beta(H,H) = 1.
  static AlgebraVector H() { return {1 / std::numbers::sqrt2, 0, 0}; }

  Mat2 matrix() const { return {0.5 * h, e, f, -0.5 * h}; }
  static AlgebraVector from_matrix(const Mat2& m) { return {m.m00 - m.m11, m.m01, m.m10}; }
  double max_abs() const;
};

AlgebraVector operator+(const AlgebraVector& x, const AlgebraVector& y);
AlgebraVector operator-(const AlgebraVector& x, const AlgebraVector& y);
AlgebraVector operator*(double s, const AlgebraVector& x);

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y);
// beta(X,Y) = 4 tr(XY), equal to tr(ad X ad Y) on sl(2,R).
double killing_form(const AlgebraVector& x, const AlgebraVector& y);

// g = k(phi) n(n) a(a), with k(phi) = exp(phi(E-F)), n(s) = exp(sE), a(t) = exp(tH0).
// phi is the lifted K-angle, so phi and phi + 2pi are different points of the cover.
struct GroupElement {
  double phi = 0, n = 0, a = 0;

  static GroupElement identity() { return {}; }
  static GroupElement k(double phi) { return {phi, 0, 0}; }
  static GroupElement nil(double s) { return {0, s, 0}; }
  static GroupElement cartan(double t) { return {0, 0, t}; }
  // Quarter rotation J, J^2 = -I.
  static GroupElement J() { return {kPi / 2, 0, 0}; }
  // Central element k(m pi).
  static GroupElement center(long m) { return {kPi * static_cast<double>(m), 0, 0}; }

  Mat2 matrix() const;
};

struct IwasawaFactors {
  double k = 0, n = 0, a = 0;
};

Mat2 rotation(double phi);
// Principal Iwasawa coordinates of a matrix, phi in (-pi, pi].
GroupElement iwasawa_of_matrix(const Mat2& m);

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement operator*(const GroupElement& g, const GroupElement& h);

AlgebraVector adjoint(const GroupElement& g, const AlgebraVector& x);

GroupElement exp_map(const AlgebraVector& x);
// Throws std::domain_error outside the image of exp near the identity.
AlgebraVector log_map(const GroupElement& g);

IwasawaFactors iwasawa_decompose(const GroupElement& g);
GroupElement iwasawa_compose(const IwasawaFactors& f);

GroupElement sigma(const GroupElement& g);
AlgebraVector sigma(const AlgebraVector& x);
GroupElement twisted_conjugate(const GroupElement& g, const GroupElement& x);

// Central elements are exactly (m pi, 0, 0).
bool is_central(const GroupElement& g, double tol = 1e-12);
double coord_distance(const GroupElement& g, const GroupElement& h);

}  // namespace adsdeform
