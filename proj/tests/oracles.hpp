#pragma once
// Independent reference computations used only by the tests.

#include <Eigen/Dense>
#include <random>

#include "adsdeform/lie.hpp"

namespace oracle {

using adsdeform::GroupElement;
using adsdeform::Mat2;

inline Eigen::Matrix2d eig(const Mat2& m) {
  Eigen::Matrix2d r;
  r << m.m00, m.m01, m.m10, m.m11;
  return r;
}

// Matrix of (phi, n, a) built straight from the definition k(phi) n(s) a(t).
inline Eigen::Matrix2d chart_matrix(double phi, double n, double a) {
  Eigen::Matrix2d k, nn, aa;
  k << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  nn << 1, n, 0, 1;
  aa << std::exp(a / 2), 0, 0, std::exp(-a / 2);
  return k * nn * aa;
}

// K-angle of a matrix via Gram-Schmidt on its first column.
inline double k_angle(const Eigen::Matrix2d& m) {
  Eigen::Vector2d c = m.col(0).normalized();
  return std::atan2(-c(1), c(0));
}

// Lift of the K-angle along a continuous matrix path, tracked in small steps.
template <class Path>
double tracked_angle(Path path, double start_angle, int steps = 4000) {
  double lifted = start_angle;
  double prev = k_angle(path(0.0));
  for (int i = 1; i <= steps; ++i) {
    const double cur = k_angle(path(static_cast<double>(i) / steps));
    lifted += std::remainder(cur - prev, 2 * adsdeform::kPi);
    prev = cur;
  }
  return lifted;
}

// Lifted product: shrink both factors to the identity and follow the product path.
inline double product_angle(const GroupElement& g, const GroupElement& h) {
  auto path = [&](double s) -> Eigen::Matrix2d {
    return chart_matrix(s * g.phi, s * g.n, s * g.a) * chart_matrix(s * h.phi, s * h.n, s * h.a);
  };
  return tracked_angle(path, 0.0);
}

// QR (Gram-Schmidt) Iwasawa factors of a matrix: M = Q R with R upper, positive diagonal.
inline void qr_factors(const Eigen::Matrix2d& m, double& angle, double& n, double& a) {
  Eigen::Vector2d c0 = m.col(0);
  const double r00 = c0.norm();
  Eigen::Vector2d q0 = c0 / r00;
  const double r01 = q0.dot(m.col(1));
  angle = std::atan2(-q0(1), q0(0));
  a = 2 * std::log(r00);
  n = r01 * r00;  // R = [[e^{a/2}, n e^{-a/2}], [0, e^{-a/2}]]
}

inline GroupElement random_element(std::mt19937_64& rng, double lo = -5, double hi = 5) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double phi = u(rng), n = u(rng), a = u(rng);
  return {phi, n, a};
}

// ad X as a 3x3 matrix in the basis (H0, E, F).
inline Eigen::Matrix3d ad_matrix(double h, double e, double f) {
  Eigen::Matrix3d m;
  // [X, H0] = -e E + f F, [X, E] = -2f H0 + h E, [X, F] = 2e H0 - h F
  m << 0, -2 * f, 2 * e,
      -e, h, 0,
      f, 0, -h;
  return m;
}

}  // namespace oracle
