#include "adsdeform/spinor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace adsdeform {

namespace {

using cplx = std::complex<double>;
constexpr double kSqrt2 = std::numbers::sqrt2;

double interior_max(const StarGrid& g, const Field& f) {
  double m = 0;
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j)
      if (g.in_interior(i, j)) m = std::max(m, std::abs(f(i, j)));
  return m;
}

double interior_max(const StarGrid& g, const SpinorField& f) {
  return std::max(interior_max(g, f[0]), interior_max(g, f[1]));
}

SpinorField operator-(const SpinorField& x, const SpinorField& y) { return {x[0] - y[0], x[1] - y[1]}; }
SpinorField operator+(const SpinorField& x, const SpinorField& y) { return {x[0] + y[0], x[1] + y[1]}; }

SpinorField mat_apply(const Mat2c& m, const SpinorField& f) {
  return {m(0, 0) * f[0] + m(0, 1) * f[1], m(1, 0) * f[0] + m(1, 1) * f[1]};
}

// e^{-t} per row.
Field row_weight(const StarGrid& g, const Field& f) {
  Field out = f;
  for (int i = 0; i < g.na; ++i) out.row(i) *= std::exp(-g.a(i));
  return out;
}

}  // namespace

std::array<Mat2c, 3> gammas() {
  Mat2c g0, g1, g2;
  g0 << 0, 1, 1, 0;
  g1 << 1, 0, 0, -1;
  g2 << 0, 1, -1, 0;
  return {g0, g1, g2};
}

Mat2c krein_form() { return gammas()[2]; }

SpinorField right_action(const StarEngine& e, const SpinorField& psi, const Field& a) {
  return {e.product(psi[0], a), e.product(psi[1], a)};
}

SpinorField left_action(const StarEngine& e, const Field& a, const SpinorField& psi) {
  return {e.product(a, psi[0]), e.product(a, psi[1])};
}

SpinorField endo_action(const StarEngine& e, const EndoField& g, const SpinorField& psi) {
  return {e.product(g[0][0], psi[0]) + e.product(g[0][1], psi[1]),
          e.product(g[1][0], psi[0]) + e.product(g[1][1], psi[1])};
}

SpinorField right_endo(const StarEngine& e, const SpinorField& psi, const EndoField& g) {
  return {e.product(psi[0], g[0][0]) + e.product(psi[1], g[0][1]),
          e.product(psi[0], g[1][0]) + e.product(psi[1], g[1][1])};
}

Field grid_derivative(const StarGrid& g, const Field& f, int axis) {
  Eigen::FFT<double> fft;
  const int n = axis == 0 ? g.na : g.nl, lines = axis == 0 ? g.nl : g.na;
  const int pos = (n - 1) / 2;  // odd length: no Nyquist bin
  const double w = 2 * std::numbers::pi / (n * g.h);
  Field out(g.na, g.nl);
  std::vector<cplx> line(n), spec;
  for (int q = 0; q < lines; ++q) {
    for (int p = 0; p < n; ++p) line[p] = axis == 0 ? f(p, q) : f(q, p);
    fft.fwd(spec, line);
    for (int k = 0; k < n; ++k) {
      const int kk = k <= pos ? k : k - n;
      spec[k] *= cplx(0, w * kk);
    }
    fft.inv(line, spec);
    for (int p = 0; p < n; ++p) (axis == 0 ? out(p, q) : out(q, p)) = line[p];
  }
  return out;
}

Field apply_field(const StarGrid& g, ChartField x, const Field& f) {
  switch (x) {
    case ChartField::RIGHT_H: return grid_derivative(g, f, 0);
    case ChartField::RIGHT_E: return row_weight(g, grid_derivative(g, f, 1));
    case ChartField::LEFT_E: return grid_derivative(g, f, 1);
    case ChartField::DILATION: {
      Field out = grid_derivative(g, f, 1);
      for (int j = 0; j < g.nl; ++j) out.col(j) *= g.l(j);
      return out;
    }
  }
  throw std::invalid_argument("apply_field: unknown field");
}

DerivationReport derivation_check(const StarEngine& e, ChartField x, const Field& a, const Field& b) {
  const StarGrid& g = e.grid();
  const Field lhs = apply_field(g, x, e.product(a, b));
  const Field rhs = e.product(apply_field(g, x, a), b) + e.product(a, apply_field(g, x, b));
  return {interior_max(g, lhs - rhs) / interior_max(g, rhs)};
}

Eigen::Matrix2d orbit_gram_at(const DomainOrbit& orbit, const ANElement& rho) {
  const double eps = 1e-5;
  std::array<std::array<double, 2>, 2> ef{};
  const TwistedCoords c0 = twisted_iwasawa_decompose(orbit.point(rho));
  for (int k = 0; k < 2; ++k) {
    const ANElement y = k == 0 ? ANElement{eps, 0} : ANElement{0, eps};
    const TwistedCoords cp = twisted_iwasawa_decompose(orbit.point(an_multiply(y, rho)));
    const TwistedCoords cm = twisted_iwasawa_decompose(orbit.point(an_multiply(an_inverse(y), rho)));
    const ChartTangent v{0, (cp.phi - cm.phi) / (2 * eps), (cp.s - cm.s) / (2 * eps)};
    coset_tangent_ef(c0, v, ef[k][0], ef[k][1]);
  }
  Eigen::Matrix2d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = orbit_metric(ef[i][0], ef[i][1], ef[j][0], ef[j][1]);
  return out;
}

DiracFrame DiracFrame::build(const BhtzRAction& act, long sheet) {
  if (act.kind != DomainKind::SPINLESS) throw std::invalid_argument("DiracFrame: spinless domain only");
  DiracFrame fr;
  const DomainOrbit orbit{act, sheet, 0};
  fr.orbit_gram = orbit_gram_at(orbit, {0, 0});
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(-fr.orbit_gram);
  const Eigen::Vector2d lam = es.eigenvalues();  // ascending
  if (!(lam(0) < 0 && lam(1) > 0)) throw std::domain_error("DiracFrame: orbit metric is not Lorentzian");
  Eigen::Matrix2d v = es.eigenvectors();
  for (int c = 0; c < 2; ++c) {
    const int big = std::abs(v(0, c)) >= std::abs(v(1, c)) ? 0 : 1;
    if (v(big, c) < 0) v.col(c) *= -1;
  }
  fr.z.row(0) = v.col(1).transpose() / std::sqrt(lam(1));
  fr.z.row(1) = v.col(0).transpose() / std::sqrt(-lam(0));
  return fr;
}

double DiracFrame::phi(double a) const { return 1 / (2 * kSqrt2 * std::cosh(a / (2 * kSqrt2))); }

double DiracFrame::dphi(double a) const { return -phi(a) * std::tanh(a / (2 * kSqrt2)) / (2 * kSqrt2); }

std::array<std::array<std::array<double, 3>, 3>, 3> DiracFrame::structure(double a) const {
  std::array<std::array<std::array<double, 3>, 3>, 3> c{};
  const double r = dphi(a) / phi(a);
  for (int i = 1; i < 3; ++i) {
    c[0][i][i] = r * kEta[i];
    c[i][0][i] = -r * kEta[i];
  }
  // [e1, e2] = -phi det Z Y_e and Y_e = phi^-1 sum_k (Z^-1)_{1k} e_{k+1}.
  const Eigen::Matrix2d zi = z.inverse();
  for (int k = 0; k < 2; ++k) {
    const double coef = -phi(a) * z.determinant() * zi(1, k);
    c[1][2][k + 1] = coef * kEta[k + 1];
    c[2][1][k + 1] = -coef * kEta[k + 1];
  }
  return c;
}

std::array<std::array<std::array<double, 3>, 3>, 3> DiracFrame::connection(double a) const {
  const auto c = structure(a);
  std::array<std::array<std::array<double, 3>, 3>, 3> w{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) w[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
  return w;
}

std::array<Mat2c, 3> DiracFrame::spin_connection(double a) const {
  const auto w = connection(a);
  const auto gm = gammas();
  std::array<Mat2c, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i].setZero();
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i] -= 0.25 * w[i][j][k] * kEta[j] * kEta[k] * gm[j] * gm[k];
  }
  return out;
}

double DiracFrame::volume_density(double a, double t) const {
  return std::exp(t) / (phi(a) * phi(a) * std::abs(z.determinant()));
}

namespace {

// e_i f on the middle slice for i = 0, 1, 2.
std::array<Field, 3> frame_derivatives(const DiracFrame& fr, const StarGrid& g, double a0, double da,
                                       const std::array<Field, 3>& f) {
  const Field dt = grid_derivative(g, f[1], 0);
  const Field ye = row_weight(g, grid_derivative(g, f[1], 1));
  const double p = fr.phi(a0);
  return {(f[2] - f[0]) / (2 * da), p * (fr.z(0, 0) * dt + fr.z(0, 1) * ye), p * (fr.z(1, 0) * dt + fr.z(1, 1) * ye)};
}

SpinorField clifford(const std::array<Field, 3>& d0, const std::array<Field, 3>& d1) {
  // sum_i eta^ii gamma_i applied to the spinor with components (d0[i], d1[i]).
  const auto gm = gammas();
  SpinorField out{Field::Zero(d0[0].rows(), d0[0].cols()), Field::Zero(d0[0].rows(), d0[0].cols())};
  for (int i = 0; i < 3; ++i) out = out + mat_apply(kEta[i] * gm[i], SpinorField{d0[i], d1[i]});
  return out;
}

}  // namespace

SpinorField dirac(const DiracFrame& fr, const StarGrid& g, const SlicedSpinor& psi) {
  const auto d0 = frame_derivatives(fr, g, psi.a0, psi.da, {psi.slices[0][0], psi.slices[1][0], psi.slices[2][0]});
  const auto d1 = frame_derivatives(fr, g, psi.a0, psi.da, {psi.slices[0][1], psi.slices[1][1], psi.slices[2][1]});
  SpinorField out = clifford(d0, d1);
  const auto gm = gammas();
  const auto sc = fr.spin_connection(psi.a0);
  Mat2c m = Mat2c::Zero();
  for (int i = 0; i < 3; ++i) m += kEta[i] * gm[i] * sc[i];
  return out + mat_apply(m, psi.slices[1]);
}

DiracCommutatorReport dirac_commutator_check(const DiracFrame& fr, const StarEngine& e,
                                             const std::array<Field, 3>& a, const SlicedSpinor& psi) {
  const StarGrid& g = e.grid();
  SlicedSpinor prod = psi;
  for (int k = 0; k < 3; ++k) prod.slices[k] = right_action(e, psi.slices[k], a[k]);
  const SpinorField d_prod = dirac(fr, g, prod);
  const SpinorField dpsi_a = right_action(e, dirac(fr, g, psi), a[1]);
  const std::array<Field, 3> da = frame_derivatives(fr, g, psi.a0, psi.da, a);
  // Psi * (Da) = sum_i eta^ii gamma_i (Psi * e_i a).
  std::array<Field, 3> c0, c1;
  for (int i = 0; i < 3; ++i) {
    const SpinorField p = right_action(e, psi.slices[1], da[i]);
    c0[i] = p[0];
    c1[i] = p[1];
  }
  const SpinorField rhs = clifford(c0, c1);
  const SpinorField lhs = d_prod - dpsi_a;
  DiracCommutatorReport rep;
  rep.defect = interior_max(g, lhs - rhs) / interior_max(g, rhs);
  double dmax = 0;
  for (const Field& f : da) dmax = std::max(dmax, interior_max(g, f));
  rep.bound_ratio = interior_max(g, lhs) / (dmax * interior_max(g, psi.slices[1]));
  return rep;
}

Field hamiltonian(const StarGrid& g, const Field& xt, const Field& xs, double tol) {
  // Spectral antiderivative along s of -X^t: every row of X^t = -d_s lambda has zero mean.
  Eigen::FFT<double> fft;
  const int n = g.nl, pos = (n - 1) / 2;
  const double w = 2 * std::numbers::pi / (n * g.h);
  Field lambda(g.na, g.nl);
  std::vector<cplx> line(n), spec;
  for (int i = 0; i < g.na; ++i) {
    for (int j = 0; j < n; ++j) line[j] = -xt(i, j);
    fft.fwd(spec, line);
    spec[0] = 0;
    for (int k = 1; k < n; ++k) spec[k] /= cplx(0, w * (k <= pos ? k : k - n));
    fft.inv(line, spec);
    for (int j = 0; j < n; ++j) lambda(i, j) = line[j];
  }
  // Fix the per-row constant so lambda vanishes at the window edge s = l(0).
  for (int i = 0; i < g.na; ++i) lambda.row(i).array() -= lambda(i, 0);
  const double scale = std::max(xt.cwiseAbs().maxCoeff(), xs.cwiseAbs().maxCoeff());
  const double resid = (grid_derivative(g, lambda, 0) - xs).cwiseAbs().maxCoeff();
  if (resid > tol * scale) throw std::invalid_argument("hamiltonian: i_X omega is not closed");
  return lambda;
}

std::array<Field, 2> hamiltonian_field(const StarGrid& g, const Field& lambda) {
  return {-grid_derivative(g, lambda, 1), grid_derivative(g, lambda, 0)};
}

EndoField leaf_connection(const DiracFrame& fr, const StarGrid& g, double a, const Field& xt, const Field& xs) {
  // X = X^t Y_h + X^s e^t Y_e, and Y = phi^-1 Z^-1 e.
  const Eigen::Matrix2d zi = fr.z.inverse();
  const auto sc = fr.spin_connection(a);
  Field ye = xs;
  for (int i = 0; i < g.na; ++i) ye.row(i) *= std::exp(g.a(i));
  const double ip = 1 / fr.phi(a);
  const Field x1 = ip * (zi(0, 0) * xt + zi(1, 0) * ye);
  const Field x2 = ip * (zi(0, 1) * xt + zi(1, 1) * ye);
  EndoField out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = sc[1](r, c) * x1 + sc[2](r, c) * x2;
  return out;
}

SpinorField deformed_covariant_derivative(const StarEngine& e, const Field& lambda, const EndoField& gamma_x,
                                          const SpinorField& psi) {
  const cplx f(0, 1 / e.options().theta);
  const SpinorField comm = left_action(e, lambda, psi) - right_action(e, psi, lambda);
  const SpinorField conn = right_endo(e, psi, gamma_x);
  return {f * comm[0] + conn[0], f * comm[1] + conn[1]};
}

}  // namespace adsdeform
