#include "adsdeform/poisson.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace adsdeform {

namespace {

// Matrix of X -> [X, xi] in the (h, e, f) basis.
Eigen::Matrix3d ad_minus(const AlgebraVector& xi) {
  Eigen::Matrix3d m;
  const AlgebraVector basis[3] = {AlgebraVector::H0(), AlgebraVector::E(), AlgebraVector::F()};
  for (int j = 0; j < 3; ++j) {
    const AlgebraVector c = bracket(basis[j], xi);
    m.col(j) << c.h, c.e, c.f;
  }
  return m;
}

AlgebraVector solve_tangent(const Eigen::Matrix3d& ad, const AlgebraVector& v) {
  const Eigen::Vector3d rhs(v.h, v.e, v.f);
  const Eigen::Vector3d x = ad.completeOrthogonalDecomposition().solve(rhs);
  const double resid = (ad * x - rhs).norm();
  if (resid > 1e-8 * (1 + rhs.norm())) throw std::invalid_argument("kks_form: vector not tangent to the orbit");
  return {x(0), x(1), x(2)};
}

}  // namespace

double kks_form(const AlgebraVector& xi, const AlgebraVector& v, const AlgebraVector& w) {
  const Eigen::Matrix3d ad = ad_minus(xi);
  return killing_form(xi, bracket(solve_tangent(ad, v), solve_tangent(ad, w)));
}

double omega_eval(const TwistedCoords& at, const ChartTangent& v, const ChartTangent& w) {
  // beta(Ad(g)H, [Ad(g)Yv, Ad(g)Yw]) = beta(H, [Yv, Yw]); only the E, F parts of Y contribute.
  double ve, vf, we, wf;
  coset_tangent_ef(at, v, ve, vf);
  coset_tangent_ef(at, w, we, wf);
  return killing_form(AlgebraVector::H(), bracket({0, ve, vf}, {0, we, wf}));
}

double omega_eval(const GroupElement& x, const ChartTangent& v, const ChartTangent& w) {
  return omega_eval(twisted_iwasawa_decompose(x), v, w);
}

double volume_density(const TwistedCoords& at) {
  const ChartTangent basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = metric_eval(at, basis[i], basis[j]);
  return std::sqrt(std::abs(g.determinant()));
}

double da_omega_density(const TwistedCoords& at) { return omega_eval(at, {0, 1, 0}, {0, 0, 1}); }

double BFieldProfile::value(double a) const {
  if (kind == ProfileKind::TANH) return std::tanh(a / 2) + c;
  // Antiderivative of cosh^2(a/(2 sqrt2)), normalized so f'(0) = 1/2 like tanh.
  const double r = std::numbers::sqrt2;
  return 0.5 * (0.5 * a + 0.5 * r * std::sinh(a / r)) + c;
}

double BFieldProfile::derivative(double a) const {
  if (kind == ProfileKind::TANH) {
    const double ch = std::cosh(a / 2);
    return 0.5 / (ch * ch);
  }
  const double ch = std::cosh(a / (2 * std::numbers::sqrt2));
  return 0.5 * ch * ch;
}

BFieldProfile tanh_profile(double c) { return {ProfileKind::TANH, c}; }
BFieldProfile volume_matched_profile(double c) { return {ProfileKind::VOLUME_MATCHED, c}; }

namespace {

// Orthonormal frame of the chart metric at a point (Gram-Schmidt with signature).
Eigen::Matrix3d orthonormal_chart_frame(const TwistedCoords& at) {
  Eigen::Matrix3d g;
  const ChartTangent basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = metric_eval(at, basis[i], basis[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
  Eigen::Matrix3d frame;
  for (int k = 0; k < 3; ++k) frame.col(k) = es.eigenvectors().col(k) / std::sqrt(std::abs(es.eigenvalues()(k)));
  if (frame.determinant() < 0) frame.col(0) *= -1;
  return frame;
}

}  // namespace

BFieldCalibration calibrate_bfield(const BFieldProfile& f) {
  const TwistedCoords e{};
  return {volume_density(e) / (f.derivative(0) * da_omega_density(e))};
}

double bfield_check(const BFieldProfile& f, const BFieldCalibration& cal, const GroupElement& x) {
  const TwistedCoords at = twisted_iwasawa_decompose(x);
  const double det = orthonormal_chart_frame(at).determinant();
  const double nu = volume_density(at) * det;
  const double lhs = cal.scale * f.derivative(at.a) * da_omega_density(at) * det;
  return std::abs(lhs - nu) / std::abs(nu);
}

ScalarFn abelian_poisson(ScalarFn u, ScalarFn v, std::vector<std::vector<double>> J, AbelianAction action,
                         double step) {
  return [u = std::move(u), v = std::move(v), J = std::move(J), action = std::move(action),
          step](const std::vector<double>& x) {
    const std::size_t d = J.size();
    auto derivative = [&](const ScalarFn& fn, std::size_t i) {
      auto central = [&](double h) {
        std::vector<double> t(d, 0.0);
        t[i] = h;
        const double plus = fn(action(x, t));
        t[i] = -h;
        return (plus - fn(action(x, t))) / (2 * h);
      };
      return (4 * central(step / 2) - central(step)) / 3;
    };
    std::vector<double> du(d), dv(d);
    for (std::size_t i = 0; i < d; ++i) {
      du[i] = derivative(u, i);
      dv[i] = derivative(v, i);
    }
    double out = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out += J[i][j] * du[i] * dv[j];
    return out;
  };
}

}  // namespace adsdeform
