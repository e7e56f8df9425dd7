#include "adsdeform/lie.hpp"

#include <algorithm>
#include <stdexcept>

namespace adsdeform {

Mat2 Mat2::inverse() const { return {m11, -m01, -m10, m00}; }

double Mat2::frobenius() const { return std::sqrt(m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
          x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}
Mat2 operator+(const Mat2& x, const Mat2& y) {
  return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}
Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
}
Mat2 operator*(double s, const Mat2& x) { return {s * x.m00, s * x.m01, s * x.m10, s * x.m11}; }

double AlgebraVector::max_abs() const { return std::max({std::abs(h), std::abs(e), std::abs(f)}); }

AlgebraVector operator+(const AlgebraVector& x, const AlgebraVector& y) {
  return {x.h + y.h, x.e + y.e, x.f + y.f};
}
AlgebraVector operator-(const AlgebraVector& x, const AlgebraVector& y) {
  return {x.h - y.h, x.e - y.e, x.f - y.f};
}
AlgebraVector operator*(double s, const AlgebraVector& x) { return {s * x.h, s * x.e, s * x.f}; }

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) {
  // [H0,E] = E, [H0,F] = -F, [E,F] = 2 H0
  return {2 * (x.e * y.f - x.f * y.e), x.h * y.e - x.e * y.h, x.f * y.h - x.h * y.f};
}

double killing_form(const AlgebraVector& x, const AlgebraVector& y) {
  return 2 * x.h * y.h + 4 * (x.e * y.f + x.f * y.e);
}

Mat2 rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {c, s, -s, c};
}

Mat2 GroupElement::matrix() const {
  const double r = std::exp(0.5 * a);
  return rotation(phi) * Mat2{r, n / r, 0, 1 / r};
}

GroupElement iwasawa_of_matrix(const Mat2& m) {
  const double r = std::hypot(m.m00, m.m10);
  const double phi = std::atan2(-m.m10, m.m00);
  const double c = std::cos(phi), s = std::sin(phi);
  const double q = c * m.m01 - s * m.m11;
  return {phi, q * r, 2 * std::log(r)};
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  // g h = k1 (b k2) n2 a2 with b = n1 a1. Rewriting b k2 = k(psi) b' only needs the lift
  // of psi: phi -> psi(phi) lifts a circle map fixing every multiple of pi, so
  // |psi - phi| < pi and the lift is the representative nearest phi2.
  const double r = std::exp(0.5 * g.a);
  const Mat2 b{r, g.n / r, 0, 1 / r};
  const double r2 = std::exp(0.5 * h.a);
  const Mat2 c = b * rotation(h.phi) * Mat2{r2, h.n / r2, 0, 1 / r2};
  const GroupElement p = iwasawa_of_matrix(c);
  const double psi = h.phi + std::remainder(p.phi - h.phi, 2 * kPi);
  return {g.phi + psi, p.n, p.a};
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) { return multiply(g, h); }

GroupElement inverse(const GroupElement& g) {
  return multiply(multiply(GroupElement::cartan(-g.a), GroupElement::nil(-g.n)), GroupElement::k(-g.phi));
}

AlgebraVector adjoint(const GroupElement& g, const AlgebraVector& x) {
  const Mat2 m = g.matrix();
  return AlgebraVector::from_matrix(m * x.matrix() * m.inverse());
}

namespace {

// exp of a traceless 2x2 matrix: X^2 = delta I with delta = -det X.
Mat2 expm_traceless(const Mat2& x) {
  const double delta = -x.det();
  double c, s;
  if (std::abs(delta) < 1e-8) {
    c = 1 + delta / 2 + delta * delta / 24;
    s = 1 + delta / 6 + delta * delta / 120;
  } else if (delta > 0) {
    const double mu = std::sqrt(delta);
    c = std::cosh(mu);
    s = std::sinh(mu) / mu;
  } else {
    const double mu = std::sqrt(-delta);
    c = std::cos(mu);
    s = std::sin(mu) / mu;
  }
  return Mat2{c, 0, 0, c} + s * x;
}

}  // namespace

GroupElement exp_map(const AlgebraVector& x) {
  int k = 0;
  double scale = 1;
  const double size = std::abs(x.h) + std::abs(x.e) + std::abs(x.f);
  while (size * scale > 0.25) {
    scale *= 0.5;
    ++k;
  }
  GroupElement g = iwasawa_of_matrix(expm_traceless((scale * x).matrix()));
  for (int i = 0; i < k; ++i) g = multiply(g, g);
  return g;
}

AlgebraVector log_map(const GroupElement& g) {
  const Mat2 m = g.matrix();
  const double half_tr = 0.5 * m.trace();
  const Mat2 x0 = m - Mat2{half_tr, 0, 0, half_tr};
  const double delta = -x0.det();
  if (half_tr <= 0) throw std::domain_error("log_map: trace <= 0, no principal logarithm");
  double factor;
  if (std::abs(delta) < 1e-10) {
    factor = 1 - delta / 6;
  } else if (delta > 0) {
    const double mu = std::asinh(std::sqrt(delta));
    factor = mu / std::sqrt(delta);
  } else {
    const double mu = std::atan2(std::sqrt(-delta), half_tr);
    factor = mu / std::sqrt(-delta);
  }
  const AlgebraVector x = AlgebraVector::from_matrix(factor * x0);
  const GroupElement back = exp_map(x);
  if (coord_distance(back, g) > 1e-8 * (1 + std::abs(g.phi) + std::abs(g.n) + std::abs(g.a)))
    throw std::domain_error("log_map: element is not exp of a small algebra vector on this sheet");
  return x;
}

IwasawaFactors iwasawa_decompose(const GroupElement& g) { return {g.phi, g.n, g.a}; }

GroupElement iwasawa_compose(const IwasawaFactors& f) {
  return multiply(multiply(GroupElement::k(f.k), GroupElement::nil(f.n)), GroupElement::cartan(f.a));
}

// Conjugation by diag(1,-1): k(phi) -> k(-phi), n(s) -> n(-s), A fixed.
GroupElement sigma(const GroupElement& g) { return {-g.phi, -g.n, g.a}; }

AlgebraVector sigma(const AlgebraVector& x) { return {x.h, -x.e, -x.f}; }

GroupElement twisted_conjugate(const GroupElement& g, const GroupElement& x) {
  return multiply(multiply(g, x), sigma(inverse(g)));
}

bool is_central(const GroupElement& g, double tol) {
  const double q = g.phi / kPi;
  return std::abs(g.n) < tol && std::abs(g.a) < tol && std::abs(q - std::round(q)) < tol;
}

double coord_distance(const GroupElement& g, const GroupElement& h) {
  return std::max({std::abs(g.phi - h.phi), std::abs(g.n - h.n), std::abs(g.a - h.a)});
}

}  // namespace adsdeform
