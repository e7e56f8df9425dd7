#include "adsdeform/udf.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace adsdeform;

namespace {

// Bump in matrix space around the matrix of x0: chart-independent and compact on every R-orbit.
DomainFn matrix_bump(const GroupElement& x0, double sigma, double radius) {
  const Mat2 m0 = x0.matrix();
  return [=](const GroupElement& x) {
    const Mat2 m = x.matrix();
    const double r = std::hypot(std::hypot(m.m00 - m0.m00, m.m01 - m0.m01), std::hypot(m.m10 - m0.m10, m.m11 - m0.m11));
    return smooth_cutoff(r, radius) * std::exp(-r * r / (2 * sigma * sigma));
  };
}

// Gaussian bump in the chart of one orbit.
DomainFn chart_bump(const DomainOrbit& orbit, SymPoint center, double sigma = 0.25, double radius = 0.8) {
  const Profile p = gaussian_bump(center, sigma, radius);
  return [orbit, p](const GroupElement& x) {
    const ANElement r = orbit.chart(x);
    return p(r.t, r.s);
  };
}

double an_distance(const ANElement& x, const ANElement& y) { return std::hypot(x.t - y.t, x.s - y.s); }

}  // namespace

TEST_CASE("R acts on M by automorphisms of the symmetric space") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 100; ++k) {
    const ANElement r1{u(rng), u(rng)}, r2{u(rng), u(rng)};
    const SymPoint x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    CHECK(distance(r_action(r1, r_action(r2, x)), r_action(an_multiply(r1, r2), x)) < 1e-12);
    CHECK(distance(r_action(r1, symmetry(x, y)), symmetry(r_action(r1, x), r_action(r1, y))) < 1e-10);
    CHECK(std::abs(phase_S_closed(r_action(r1, x), r_action(r1, y), r_action(r1, z)) - phase_S_closed(x, y, z)) <
          1e-10 * (1 + std::abs(phase_S_closed(x, y, z))));
    CHECK(left_translation_jacobian(r1, r2) == doctest::Approx(1).epsilon(1e-8));
  }
  // Infinitesimally: the t-flow is the boost and the s-flow is e^-a d/dl.
  const TransvectionAlgebra tv = transvection_generators();
  for (SymPoint p : {SymPoint{0.3, -0.4}, SymPoint{-1.1, 0.9}}) {
    const double eps = 1e-6;
    const SymPoint dt = (1 / (2 * eps)) * (r_action({eps, 0}, p) - r_action({-eps, 0}, p));
    const SymPoint ds = (1 / (2 * eps)) * (r_action({0, eps}, p) - r_action({0, -eps}, p));
    const SymPoint h = tv.h(p), em = tv.e_minus(p);
    CHECK(std::abs(dt.a * h.l - dt.l * h.a) < 1e-6);
    CHECK(std::abs(ds.a * em.l - ds.l * em.a) < 1e-6);
  }
}

TEST_CASE("orbit identification and the left-invariant kernel") {
  const OrbitIdentification id{{0.4, -0.7}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const ANElement r{u(rng), u(rng)};
    CHECK(an_distance(id.element(id.point(r)), r) < 1e-12);
    const ANElement g{u(rng), u(rng)}, h{u(rng), u(rng)}, l{u(rng), u(rng)};
    const std::complex<double> k0 = kernel_on_group(g, h, l, 0.7, id);
    const std::complex<double> k1 =
        kernel_on_group(an_multiply(r, g), an_multiply(r, h), an_multiply(r, l), 0.7, id);
    worst = std::max(worst, std::abs(k1 - k0) / std::abs(k0));
  }
  CHECK(worst < 1e-6);
  // The pushed-forward form e^{-a_b} dt ^ ds is a constant multiple of the left Haar density.
  const SymPoint p0 = id.point({0.2, 0.1});
  const SymPoint pt = id.point({0.2 + 1e-6, 0.1}), ps = id.point({0.2, 0.1 + 1e-6});
  const double det = ((pt.a - p0.a) * (ps.l - p0.l) - (pt.l - p0.l) * (ps.a - p0.a)) / 1e-12;
  CHECK(det == doctest::Approx(std::exp(-id.base.a)).epsilon(1e-5));
}

TEST_CASE("BHTZ R-actions: action property, free orbits, Z-compatibility") {
  const double mass = 1.3;
  for (DomainKind kind : {DomainKind::SPINLESS, DomainKind::ROTATING}) {
    const BhtzRAction act = bhtz_raction(kind, mass, kind == DomainKind::SPINLESS ? 0.0 : 0.6);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int k = 0; k < 50; ++k) {
      const DomainOrbit orbit{act, k % 2 ? 0 : -1, u(rng), u(rng)};
      const ANElement r1{u(rng), u(rng)}, r2{u(rng), u(rng)}, rho{u(rng), u(rng)};
      const GroupElement x = orbit.point(rho);
      CHECK(coord_distance(act.act(r1, act.act(r2, x)), act.act(an_multiply(r1, r2), x)) < 1e-9);
      // The chart inverts the orbit map, so stabilizers are trivial.
      CHECK(an_distance(orbit.chart(x), rho) < 1e-8);
      CHECK(an_distance(orbit.chart(act.act(r1, x)), an_multiply(rho, an_inverse(r1))) < 1e-8);
      for (long n : {-2L, 1L, 3L})
        CHECK(coord_distance(z_action(act.xi, n, x), act.act(act.z_element(n), x)) < 1e-8);
      if (kind == DomainKind::SPINLESS) CHECK(extension_domain_membership(act.xi, x).member);
    }
  }
  CHECK_THROWS_AS(bhtz_raction(DomainKind::SPINLESS, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bhtz_raction(DomainKind::ROTATING, 1, 0), std::invalid_argument);
}

TEST_CASE("UDF on an orbit: fiber engine equals the kernel integral over R") {
  const StarGrid g = StarGrid::make(12, 3, 4);
  // Without refinement the quadrature nodes are the grid itself, so the two routes agree to rounding.
  StarOptions opt;
  opt.nyquist_mask = false;
  opt.upsample = 1;
  const StarEngine engine(g, opt);
  for (DomainKind kind : {DomainKind::SPINLESS, DomainKind::ROTATING}) {
    const BhtzRAction act = bhtz_raction(kind, 1.3, kind == DomainKind::SPINLESS ? 0.0 : 0.6);
    const DomainOrbit orbit{act, 0, 0.3, 0.2};
    const DomainFn fa = chart_bump(orbit, {-0.2, 0.1}, 0.4, 1.2), fb = chart_bump(orbit, {0.2, -0.1}, 0.4, 1.2);
    const Field c = udf_product(engine, orbit, fa, fb);
    const double scale = c.cwiseAbs().maxCoeff();
    CHECK(scale > 1e-3);
    const int mi = (g.na - 1) / 2, mj = (g.nl - 1) / 2;
    for (auto [i, j] : {std::pair{mi, mj}, std::pair{mi + 1, mj - 2}}) {
      const std::complex<double> d = udf_product_direct(engine, orbit, fa, fb, i, j);
      CHECK(std::abs(d - c(i, j)) < 1e-6 * scale);
    }
  }
}

TEST_CASE("UDF covariance: exact for the commutant, not for the R-action") {
  const StarGrid g = StarGrid::make(36);
  const StarEngine engine(g, {});
  // Mass chosen so exp(cH) is four grid rows.
  const double step = 4 * g.h, mass = 4 * step * step;
  const BhtzRAction act = bhtz_raction(DomainKind::SPINLESS, mass, 0);
  CHECK(act.z_element(1).t == doctest::Approx(step));
  const DomainOrbit orbit{act, 0, 0.4};
  const DomainFn fa = chart_bump(orbit, {-0.3, 0.2}), fb = chart_bump(orbit, {0.3, -0.2});
  const double comm = covariance_defect(engine, orbit, fa, fb, commutant_map(orbit, {2 * g.h, 0.4}));
  CHECK(comm < 1e-3);
  const double tau = covariance_defect(engine, orbit, fa, fb, raction_map(act, {step, 0.3}));
  const double z = covariance_defect(engine, orbit, fa, fb, raction_map(act, act.z_element(1)));
  MESSAGE("commutant " << comm << "  R-action " << tau << "  Z " << z);
  CHECK(tau > 1e-2);
  CHECK(z > 1e-2);
}

TEST_CASE("sigma swaps the two spinless orbits") {
  const StarGrid g = StarGrid::make(24);
  const StarEngine engine(g, {});
  const BhtzRAction act = bhtz_raction(DomainKind::SPINLESS, 1.3, 0);
  const DomainOrbit o0{act, 0, 0.4}, o1{act, -1, 0.4};
  for (const ANElement rho : {ANElement{0.3, -0.5}, ANElement{-1.2, 0.7}}) {
    CHECK(coord_distance(sigma(o0.point(rho)), o1.point({rho.t, -rho.s})) < 1e-10);
    CHECK(extension_domain_membership(act.xi, o0.point(rho)).sign ==
          -extension_domain_membership(act.xi, o1.point(rho)).sign);
  }
  const DomainFn fa = chart_bump(o1, {-0.3, 0.2}), fb = chart_bump(o1, {0.3, -0.2});
  CHECK(sigma_swap_defect(engine, act, 0.4, fa, fb) < 1e-10);
  // Without the order reversal the two products disagree at first order in theta.
  const Field p = udf_product(engine, o0, [&](const GroupElement& x) { return fa(sigma(x)); },
                              [&](const GroupElement& x) { return fb(sigma(x)); });
  const Field q = udf_product(engine, o1, fa, fb);
  CHECK((p - q.rowwise().reverse()).cwiseAbs().maxCoeff() > 1e-2 * q.cwiseAbs().maxCoeff());
}

TEST_CASE("trace over an orbit") {
  const StarGrid g = StarGrid::make(24);
  const StarEngine engine(g, {});
  const BhtzRAction act = bhtz_raction(DomainKind::ROTATING, 1.3, 0.6);
  const DomainOrbit orbit{act, 0, 0, 0.5};
  const DomainFn fa = matrix_bump(orbit.point({-0.3, 0.2}), 0.35, 1.0);
  const DomainFn fb = matrix_bump(orbit.point({0.3, -0.2}), 0.35, 1.0);
  const Field c = udf_product(engine, orbit, fa, fb);
  const Field pw = sample_on_orbit(g, orbit, fa).cwiseProduct(sample_on_orbit(g, orbit, fb));
  CHECK(std::abs(c.sum() - pw.sum()) < 1e-3 * std::abs(pw.sum()));
}
