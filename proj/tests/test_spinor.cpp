#include "adsdeform/spinor.hpp"

#include <cmath>

#include "doctest.h"

using namespace adsdeform;

namespace {

using cplx = std::complex<double>;

BhtzRAction spinless() { return bhtz_raction(DomainKind::SPINLESS, 1.3, 0); }

// Gaussian in (a, t, s) with its gradient.
struct Gauss3 {
  double a0, t0, s0, sa, st;
  double value(double a, double t, double s) const {
    return std::exp(-(a - a0) * (a - a0) / (2 * sa * sa) - ((t - t0) * (t - t0) + (s - s0) * (s - s0)) / (2 * st * st));
  }
  std::array<double, 3> grad(double a, double t, double s) const {
    const double v = value(a, t, s);
    return {-(a - a0) / (sa * sa) * v, -(t - t0) / (st * st) * v, -(s - s0) / (st * st) * v};
  }
};

Field slice(const StarGrid& g, const Gauss3& f, double a) {
  Field out(g.na, g.nl);
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) out(i, j) = f.value(a, g.a(i), g.l(j));
  return out;
}

SlicedSpinor sliced(const StarGrid& g, const Gauss3& f0, const Gauss3& f1, cplx c0, cplx c1, double a0) {
  SlicedSpinor s;
  s.a0 = a0;
  for (int k = 0; k < 3; ++k) {
    const double a = a0 + (k - 1) * s.da;
    s.slices[k] = {c0 * slice(g, f0, a), c1 * slice(g, f1, a)};
  }
  return s;
}

double interior_defect(const StarGrid& g, const SpinorField& x, const SpinorField& ref) {
  return std::max(interior_relative_defect(g, x[0], ref[0]), interior_relative_defect(g, x[1], ref[1]));
}

Profile plateau(double ra, double rl) {
  return [=](double a, double l) { return smooth_cutoff(std::abs(a), ra) * smooth_cutoff(std::abs(l), rl); };
}

const Gauss3 kG0{0.1, -0.3, 0.2, 0.4, 0.25}, kG1{-0.1, 0.3, -0.2, 0.4, 0.25}, kGa{0.0, 0.1, 0.3, 0.4, 0.25};

}  // namespace

TEST_CASE("gamma matrices: golden values, Clifford relations, Krein form") {
  const auto g = gammas();
  CHECK(g[0] == (Mat2c() << 0, 1, 1, 0).finished());
  CHECK(g[1] == (Mat2c() << 1, 0, 0, -1).finished());
  CHECK(g[2] == (Mat2c() << 0, 1, -1, 0).finished());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Mat2c ac = g[i] * g[j] + g[j] * g[i];
      CHECK(ac == Mat2c(2 * (i == j ? kEta[i] : 0.0) * Mat2c::Identity()));
      (void)j;
    }
  const Mat2c a = krein_form();
  for (int i = 0; i < 3; ++i) CHECK((a * g[i] + g[i].adjoint() * a).norm() == 0);
}

TEST_CASE("orthonormal frame and Levi-Civita spin connection") {
  const BhtzRAction act = spinless();
  const DiracFrame fr = DiracFrame::build(act);
  // The orbit Gram matrix of the right-action fields is the same at every point and transversal.
  for (double a : {-1.0, 0.0, 0.7})
    for (ANElement rho : {ANElement{0, 0}, ANElement{0.8, -0.5}, ANElement{-1.1, 1.3}})
      CHECK((orbit_gram_at(DomainOrbit{act, 0, a}, rho) - fr.orbit_gram).norm() < 1e-6);
  const Eigen::Matrix2d ortho = fr.z * (-fr.orbit_gram) * fr.z.transpose();
  CHECK((ortho - Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix()).norm() < 1e-12);

  // Frame vectors pushed into the twisted chart are orthonormal for the bi-invariant metric.
  const double a = 0.6, eps = 1e-5;
  const DomainOrbit orbit{act, 0, a};
  const ANElement rho{0.4, -0.3};
  auto coords = [&](double da, const ANElement& r) {
    TwistedCoords c = twisted_iwasawa_decompose(DomainOrbit{act, 0, a + da}.point(r));
    return c;
  };
  std::array<ChartTangent, 3> e;
  {
    const TwistedCoords p = coords(eps, rho), m = coords(-eps, rho);
    e[0] = {(p.a - m.a) / (2 * eps), (p.phi - m.phi) / (2 * eps), (p.s - m.s) / (2 * eps)};
  }
  for (int k = 0; k < 2; ++k) {
    // e_{k+1} = phi (Z_k0 Y_h + Z_k1 Y_e), Y generating rho -> exp(eps Y) rho.
    const ANElement y{fr.z(k, 0) * eps, fr.z(k, 1) * eps};
    const TwistedCoords p = coords(0, an_multiply(y, rho)), m = coords(0, an_multiply(an_inverse(y), rho));
    const double f = fr.phi(a) / (2 * eps);
    e[k + 1] = {f * (p.a - m.a), f * (p.phi - m.phi), f * (p.s - m.s)};
  }
  const TwistedCoords at = twisted_iwasawa_decompose(orbit.point(rho));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(metric_eval(at, e[i], e[j]) == doctest::Approx(i == j ? kEta[i] : 0).epsilon(1e-6));

  const auto c = fr.structure(a);
  const auto w = fr.connection(a);
  const auto sc = fr.spin_connection(a);
  const auto gm = gammas();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(w[i][j][k] + w[i][k][j]) < 1e-14);                // metric compatible
        CHECK(std::abs(w[i][j][k] - w[j][i][k] - c[i][j][k]) < 1e-14);  // torsion free
      }
      // [Gamma_i, gamma_j] = gamma(nabla_i e_j).
      Mat2c rhs = Mat2c::Zero();
      for (int k = 0; k < 3; ++k) rhs += w[i][j][k] * kEta[k] * gm[k];
      CHECK((sc[i] * gm[j] - gm[j] * sc[i] - rhs).norm() < 1e-14);
    }
}

TEST_CASE("spin lift of tau is trivial in the right-action frame") {
  const BhtzRAction act = spinless();
  const DomainOrbit orbit{act, 0, 0.3};
  const double eps = 1e-6;
  for (ANElement r : {ANElement{0.5, -0.7}, ANElement{-0.9, 0.4}})
    for (ANElement y : {ANElement{1, 0}, ANElement{0, 1}}) {
      const ANElement rho{0.2, 0.6}, ye{eps * y.t, eps * y.s};
      const ANElement base = orbit.chart(act.act(r, orbit.point(rho)));
      const ANElement moved = orbit.chart(act.act(r, orbit.point(an_multiply(ye, rho))));
      const ANElement expect = an_multiply(ye, base);
      CHECK(std::hypot(moved.t - expect.t, moved.s - expect.s) < 1e-6 * eps + 1e-10);
    }
}

TEST_CASE("deformed spinor module: unit, associativity, endomorphisms, commutative limit") {
  const StarGrid g = StarGrid::make(24, 6.5, 26);
  const StarEngine e(g, {});
  const Field unit = sample(g, plateau(6, 24));
  const SpinorField psi = {cplx(1, 0.5) * slice(g, kG0, 0), cplx(-0.3, 1) * slice(g, kG1, 0)};
  CHECK(interior_defect(g, right_action(e, psi, unit), psi) < 1e-2);
  const EndoField id{{{unit, Field::Zero(g.na, g.nl)}, {Field::Zero(g.na, g.nl), unit}}};
  CHECK(interior_defect(g, endo_action(e, id, psi), psi) < 1e-2);

  std::array<double, 2> assoc{}, compat{};
  for (int pass = 0; pass < 2; ++pass) {
    const StarGrid gg = StarGrid::make(pass == 0 ? 24 : 36);
    const StarEngine ee(gg, {});
    const SpinorField p = {slice(gg, kG0, 0), cplx(0, 1) * slice(gg, kG1, 0)};
    const Field a = sample(gg, gaussian_bump({0.2, 0.1})), b = sample(gg, gaussian_bump({-0.1, -0.2}));
    assoc[pass] = interior_defect(gg, right_action(ee, right_action(ee, p, a), b), right_action(ee, p, ee.product(a, b)));
    if (pass == 0) {
      const EndoField gam{{{a, b}, {Field::Zero(gg.na, gg.nl), a}}};
      compat[0] = interior_defect(gg, right_action(ee, endo_action(ee, gam, p), b),
                                  endo_action(ee, gam, right_action(ee, p, b)));
    }
  }
  MESSAGE("module associativity " << assoc[0] << " -> " << assoc[1] << ", compatibility " << compat[0]);
  CHECK(assoc[0] < 1e-2);
  CHECK(assoc[1] < assoc[0]);
  CHECK(compat[0] < 1e-2);

  // Psi * a -> a Psi as theta -> 0, at first order.
  const StarGrid gs = StarGrid::make(24, 3.5, 5);
  std::array<double, 2> lim{};
  for (int k = 0; k < 2; ++k) {
    StarOptions opt;
    opt.theta = k == 0 ? 0.1 : 0.05;
    const StarEngine es(gs, opt);
    const SpinorField p = {slice(gs, kG0, 0), slice(gs, kG1, 0)};
    const Field a = sample(gs, gaussian_bump({0.1, 0.1}, 0.5, 1.6));
    const SpinorField pw = {p[0].cwiseProduct(a), p[1].cwiseProduct(a)};
    lim[k] = interior_defect(gs, right_action(es, p, a), pw);
  }
  CHECK(lim[1] < 0.6 * lim[0]);
  CHECK(lim[1] < 0.1);
}

TEST_CASE("derivations: right-action fields versus controls") {
  const StarGrid g = StarGrid::make(24);
  const StarEngine e(g, {});
  const Field a = slice(g, Gauss3{0, -0.3, 0.2, 1, 0.25}, 0), b = slice(g, Gauss3{0, 0.3, -0.2, 1, 0.25}, 0);
  const double h = derivation_check(e, ChartField::RIGHT_H, a, b).defect;
  const double y = derivation_check(e, ChartField::RIGHT_E, a, b).defect;
  const double n = derivation_check(e, ChartField::LEFT_E, a, b).defect;
  const double d = derivation_check(e, ChartField::DILATION, a, b).defect;
  MESSAGE("derivation defects: Y_h " << h << "  Y_e " << y << "  d_s " << n << "  s d_s " << d);
  CHECK(h < 1e-2);
  CHECK(y < 1e-2);
  CHECK(n > 0.1);
  CHECK(d > 0.1);
  // Leibniz with a constant factor: the unit plateau.
  const StarGrid gw = StarGrid::make(24, 6.5, 26);
  const StarEngine ew(gw, {});
  const Field unit = sample(gw, plateau(4, 16)), c = slice(gw, Gauss3{0, 0.1, 0.1, 1, 0.25}, 0);
  CHECK(derivation_check(ew, ChartField::RIGHT_E, unit, c).defect < 1e-2);
}

TEST_CASE("Dirac operator: formal symmetry in the Krein pairing") {
  const DiracFrame fr = DiracFrame::build(spinless());
  const auto gm = gammas();
  const Mat2c kf = krein_form();
  const Gauss3 p0{0.1, -0.2, 0.2, 0.35, 0.35}, p1{-0.2, 0.3, -0.1, 0.35, 0.35};
  const Gauss3 q0{0.0, 0.1, -0.3, 0.35, 0.35}, q1{0.2, -0.1, 0.2, 0.35, 0.35};
  const cplx cp0(1, 0.2), cp1(0.3, -1), cq0(-0.5, 0.7), cq1(0.8, 0.1);
  // D applied pointwise with exact derivatives.
  auto dirac_at = [&](const Gauss3& f0, const Gauss3& f1, cplx c0, cplx c1, double a, double t, double s) {
    const auto g0 = f0.grad(a, t, s), g1 = f1.grad(a, t, s);
    const Eigen::Vector2cd v(c0 * f0.value(a, t, s), c1 * f1.value(a, t, s));
    std::array<Eigen::Vector2cd, 3> d;
    d[0] = Eigen::Vector2cd(c0 * g0[0], c1 * g1[0]);
    const double ph = fr.phi(a), et = std::exp(-t);
    for (int k = 0; k < 2; ++k)
      d[k + 1] = ph * Eigen::Vector2cd(c0 * (fr.z(k, 0) * g0[1] + fr.z(k, 1) * et * g0[2]),
                                       c1 * (fr.z(k, 0) * g1[1] + fr.z(k, 1) * et * g1[2]));
    const auto sc = fr.spin_connection(a);
    Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
    for (int i = 0; i < 3; ++i) out += kEta[i] * gm[i] * (d[i] + sc[i] * v);
    return std::pair{v, out};
  };
  cplx lhs{}, rhs{}, norm{};
  const double step = 0.06;
  for (double a = -2.1; a <= 2.1; a += step)
    for (double t = -2.4; t <= 2.4; t += step)
      for (double s = -2.4; s <= 2.4; s += step) {
        const auto [psi, dpsi] = dirac_at(p0, p1, cp0, cp1, a, t, s);
        const auto [phi, dphi] = dirac_at(q0, q1, cq0, cq1, a, t, s);
        const double mu = fr.volume_density(a, t);
        lhs += mu * psi.dot(kf * dphi);
        rhs += mu * dpsi.dot(kf * phi);
        norm += mu * std::abs(psi.dot(kf * dphi));
      }
  MESSAGE("<Psi, D Phi> = " << lhs << "  <D Psi, Phi> = " << rhs);
  CHECK(std::abs(lhs - rhs) < 1e-6 * std::abs(norm));
}

TEST_CASE("Dirac commutator identity") {
  const DiracFrame fr = DiracFrame::build(spinless());
  std::array<double, 2> defect{};
  for (int pass = 0; pass < 2; ++pass) {
    const StarGrid g = StarGrid::make(pass == 0 ? 24 : 36);
    const StarEngine e(g, {});
    const SlicedSpinor psi = sliced(g, kG0, kG1, cplx(1, 0.3), cplx(-0.4, 1), 0.2);
    std::array<Field, 3> a;
    for (int k = 0; k < 3; ++k) a[k] = slice(g, kGa, psi.a0 + (k - 1) * psi.da);
    const DiracCommutatorReport rep = dirac_commutator_check(fr, e, a, psi);
    defect[pass] = rep.defect;
    MESSAGE("N = " << g.n << ": defect " << rep.defect << ", sup |[D,a]Psi| / (sup|Da| sup|Psi|) " << rep.bound_ratio);
  }
  CHECK(defect[0] < 5e-2);
  CHECK(defect[1] < defect[0]);
}

TEST_CASE("Hamiltonians and the deformed covariant derivative") {
  const DiracFrame fr = DiracFrame::build(spinless());
  const StarGrid g = StarGrid::make(24);
  const Field lam = slice(g, Gauss3{0, 0.1, -0.1, 1, 0.3}, 0);
  const auto x = hamiltonian_field(g, lam);
  CHECK((hamiltonian(g, x[0], x[1]) - lam).cwiseAbs().maxCoeff() < 1e-8);
  // A radial field is not Hamiltonian.
  Field rt(g.na, g.nl), rs(g.na, g.nl);
  const Field bump = sample(g, gaussian_bump({0, 0}, 0.4, 1.2));
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) {
      rt(i, j) = g.a(i) * bump(i, j);
      rs(i, j) = g.l(j) * bump(i, j);
    }
  CHECK_THROWS_AS(hamiltonian(g, rt, rs), std::invalid_argument);

  const StarEngine e(g, {});
  const SpinorField psi = {slice(g, kG0, 0), cplx(0, 1) * slice(g, kG1, 0)};
  const Field zero = Field::Zero(g.na, g.nl);
  const EndoField gx = leaf_connection(fr, g, 0.0, x[0], x[1]);
  const EndoField g0 = leaf_connection(fr, g, 0.0, zero, zero);
  const SpinorField nz = deformed_covariant_derivative(e, zero, g0, psi);
  CHECK(std::max(nz[0].cwiseAbs().maxCoeff(), nz[1].cwiseAbs().maxCoeff()) == 0);

  // Leibniz: nabla(a * Psi) = (i/theta)[lambda, a] * Psi + a * nabla Psi.
  const Field a = slice(g, Gauss3{0, -0.2, 0.2, 1, 0.25}, 0);
  const cplx f(0, 1 / e.options().theta);
  const SpinorField lhs = deformed_covariant_derivative(e, lam, gx, left_action(e, a, psi));
  const Field comm = f * (e.product(lam, a) - e.product(a, lam));
  const SpinorField t1 = left_action(e, comm, psi), t2 = left_action(e, a, deformed_covariant_derivative(e, lam, gx, psi));
  const SpinorField rhs = {t1[0] + t2[0], t1[1] + t2[1]};
  CHECK(interior_defect(g, lhs, rhs) < 1e-2);

  // theta -> 0: X Psi + Gamma(X) Psi. Psi * Gamma has an O(theta) term and the commutator an O(theta^2) one,
  // so extrapolate with weights (1, -6, 8)/3 over theta, theta/2, theta/4.
  const StarGrid gs = StarGrid::make(24, 3.5, 5);
  const Field ls = slice(gs, Gauss3{0, 0.1, -0.1, 1, 0.5}, 0);
  const auto xs = hamiltonian_field(gs, ls);
  const EndoField gxs = leaf_connection(fr, gs, 0.0, xs[0], xs[1]);
  const SpinorField ps = {slice(gs, Gauss3{0, -0.3, 0.2, 1, 0.5}, 0), slice(gs, Gauss3{0, 0.3, -0.2, 1, 0.5}, 0)};
  SpinorField classical;
  for (int c = 0; c < 2; ++c)
    classical[c] = xs[0].cwiseProduct(grid_derivative(gs, ps[c], 0)) + xs[1].cwiseProduct(grid_derivative(gs, ps[c], 1)) +
                   gxs[c][0].cwiseProduct(ps[0]) + gxs[c][1].cwiseProduct(ps[1]);
  std::array<SpinorField, 3> q;
  for (int k = 0; k < 3; ++k) {
    StarOptions opt;
    opt.theta = 0.2 / (1 << k);
    q[k] = deformed_covariant_derivative(StarEngine(gs, opt), ls, gxs, ps);
  }
  SpinorField rich;
  for (int c = 0; c < 2; ++c) rich[c] = (q[0][c] - 6.0 * q[1][c] + 8.0 * q[2][c]) / 3.0;
  const double d_plain = interior_defect(gs, q[2], classical), d_rich = interior_defect(gs, rich, classical);
  MESSAGE("theta -> 0: defect " << d_plain << " at theta = 0.05, " << d_rich << " extrapolated");
  CHECK(d_rich < 2e-2);
  CHECK(d_rich < d_plain);
}
