#include "adsdeform/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>

#include "adsdeform/bhtz.hpp"
#include "adsdeform/lie.hpp"
#include "adsdeform/parallel.hpp"
#include "adsdeform/poisson.hpp"
#include "adsdeform/spinor.hpp"
#include "adsdeform/star.hpp"
#include "adsdeform/symsym.hpp"
#include "adsdeform/torus.hpp"
#include "adsdeform/udf.hpp"

namespace adsdeform {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const std::map<std::string, double>& tolerances() {
  static const std::map<std::string, double> t = {
      {"group.roundtrip", 1e-8},
      {"group.sigma", 1e-10},
      {"metric.relative", 1e-6},
      {"causal.incoherent", 0},
      {"bfield.residual", 1e-4},
      {"torus.ulp", 8 * kEps},
      {"torus.first_order", 1e-6},
      {"symsym.transvection", 1e-6},
      {"symsym.reflection", 1e-6},
      {"symsym.fourth_point", 1e-10},
      {"symsym.invariance", 1e-6},
      {"symsym.golden", 1e-6},
      {"star.trace", 1e-3},
      {"star.assoc", 1e-2},
      {"star.order", 1},
      {"star.pinned_c", 1e-2},
      {"star.commutative", 1e-2},
      {"udf.kernel", 1e-6},
      {"udf.covariance", 1e-3},
      {"udf.z_invariance", 1e-6},
      {"udf.sigma_swap", 1e-10},
      {"spectral.derivation", 1e-2},
      {"spectral.control", 1e-1},
      {"spectral.dirac", 5e-2},
  };
  return t;
}

double tol(const std::string& key) { return tolerances().at(key); }

Check below(std::string name, double v, double b) { return {std::move(name), v, Relation::BELOW, b}; }
Check above(std::string name, double v, double b) { return {std::move(name), v, Relation::ABOVE, b}; }
Check equal(std::string name, double v, double b) { return {std::move(name), v, Relation::EQUAL, b}; }

std::mt19937_64 rng_for(const RunConfig& cfg, int stream) { return std::mt19937_64(cfg.seed + 7919ULL * stream); }

GroupElement random_element(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  const double phi = u(rng), n = u(rng), a = u(rng);
  return {phi, n, a};
}

Eigen::Matrix2d eig(const Mat2& m) { return (Eigen::Matrix2d() << m.m00, m.m01, m.m10, m.m11).finished(); }

// ---------------------------------------------------------------- 1

Criterion group_suite(const RunConfig& cfg) {
  Criterion c{1, "group", {}, {}};
  auto rng = rng_for(cfg, 1);
  double iw = 0, iw_qr = 0, tw = 0, mod = 0, mod_coord = 0, aut = 0, inv = 0, mat = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const GroupElement g = random_element(rng, 5);
    const IwasawaFactors f = iwasawa_decompose(g);
    iw = std::max(iw, coord_distance(iwasawa_compose(f), g) / (1 + std::abs(g.n)));
    // Gram-Schmidt on the matrix as an independent factorization.
    const Eigen::Matrix2d m = eig(g.matrix());
    const double r00 = m.col(0).norm();
    const Eigen::Vector2d q0 = m.col(0) / r00;
    const double ang = std::atan2(-q0(1), q0(0)), qa = 2 * std::log(r00), qn = q0.dot(m.col(1)) * r00;
    iw_qr = std::max({iw_qr, std::abs(std::remainder(ang - f.k, 2 * kPi)), std::abs(qa - f.a) / (1 + std::abs(qa)),
                      std::abs(qn - f.n) / (1 + std::abs(qn))});
  }
  for (int i = 0; i < cfg.samples; ++i) {
    const GroupElement x = random_element(rng, 4);
    tw = std::max(tw, coord_distance(twisted_iwasawa_compose(twisted_iwasawa_decompose(x)), x) / (1 + std::abs(x.n)));
  }
  std::uniform_real_distribution<double> ua(-cfg.alpha, cfg.alpha), ub(-3, 3), uk(-6, 6);
  for (int i = 0; i < cfg.samples; ++i) {
    const RotParams p(ua(rng));
    const ModifiedIwasawa m{ub(rng), ub(rng), uk(rng)};
    const GroupElement y = modified_iwasawa_compose(m, p);
    const ModifiedIwasawa back = modified_iwasawa_decompose(y, p);
    mod_coord = std::max({mod_coord, std::abs(back.t - m.t), std::abs(back.s - m.s), std::abs(back.kappa - m.kappa)});
    mod = std::max(mod, coord_distance(modified_iwasawa_compose(back, p), y) / (1 + std::abs(y.n)));
  }
  const Eigen::Matrix2d d = Eigen::Vector2d(1, -1).asDiagonal();
  for (int i = 0; i < cfg.samples; ++i) {
    const GroupElement g = random_element(rng, 5), h = random_element(rng, 5);
    aut = std::max(aut, coord_distance(sigma(g * h), sigma(g) * sigma(h)) / (1 + std::abs(g.n) + std::abs(h.n)));
    inv = std::max(inv, coord_distance(sigma(sigma(g)), g));
    const Eigen::Matrix2d m = eig(g.matrix());
    mat = std::max(mat, (eig(sigma(g).matrix()) - d * m * d).norm() / (1 + m.norm()));
  }
  c.checks = {below("iwasawa roundtrip", iw, tol("group.roundtrip")),
              below("iwasawa vs Gram-Schmidt", iw_qr, tol("group.roundtrip")),
              below("twisted iwasawa roundtrip", tw, tol("group.roundtrip")),
              below("modified iwasawa roundtrip", mod, tol("group.roundtrip")),
              below("modified iwasawa coordinates", mod_coord, tol("group.roundtrip")),
              below("sigma automorphism", aut, tol("group.sigma")),
              below("sigma involution", inv, tol("group.sigma")),
              below("sigma vs diag(1,-1) conjugation", mat, tol("group.sigma"))};
  return c;
}

// ---------------------------------------------------------------- 2

// x^-1 dx along a chart direction, Richardson-extrapolated differences of the chart map.
AlgebraVector chart_velocity(const TwistedCoords& c, const ChartTangent& v) {
  auto at = [&](double h) {
    return eig(twisted_iwasawa_compose({c.a + h * v.da, c.phi + h * v.dphi, c.s + h * v.ds}).matrix());
  };
  const Eigen::Matrix2d xinv = eig(twisted_iwasawa_compose(c).matrix()).inverse();
  auto diff = [&](double h) -> Eigen::Matrix2d { return (at(h) - at(-h)) / (2 * h); };
  const double h = 1e-3;
  const Eigen::Matrix2d y = xinv * ((4 * diff(h / 2) - diff(h)) / 3);
  return {y(0, 0) - y(1, 1), y(0, 1), y(1, 0)};
}

Criterion metric_suite(const RunConfig& cfg) {
  Criterion c{2, "metric", {}, {}};
  auto rng = rng_for(cfg, 2);
  std::uniform_real_distribution<double> ua(-3, 3), up(-4, 4), us(-2, 2);
  const ChartTangent basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  double worst = 0, cross = 0, cross_impl = 0;
  for (int i = 0; i < cfg.metric_samples; ++i) {
    const TwistedCoords p{ua(rng), up(rng), us(rng)};
    AlgebraVector vel[3];
    for (int k = 0; k < 3; ++k) vel[k] = chart_velocity(p, basis[k]);
    double scale = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) scale = std::max(scale, std::abs(metric_eval(p, basis[a], basis[b])));
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        const double o = killing_form(vel[a], vel[b]), m = metric_eval(p, basis[a], basis[b]);
        worst = std::max(worst, std::abs(o - m) / scale);
        if (a == 0 && b > 0) {
          cross = std::max(cross, std::abs(o) / scale);
          cross_impl = std::max(cross_impl, std::abs(m));
        }
      }
  }
  c.checks = {below("block metric vs bi-invariant oracle", worst, tol("metric.relative")),
              below("oracle cross terms", cross, tol("metric.relative")),
              equal("implemented cross terms", cross_impl, 0)};
  return c;
}

// ---------------------------------------------------------------- 3

Criterion causal_suite(const RunConfig& cfg) {
  Criterion c{3, "causal", {}, {}};
  const KillingPair xi = pair_from_mass_spin(2.0, 0.0);
  auto rng = rng_for(cfg, 3);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> zi(-3, 3), pick(0, 3);
  const GroupElement j = GroupElement::J();
  long s_bad = 0, h_bad = 0, s_count = 0, h_count = 0, unclassified = 0;
  for (int i = 0; i < cfg.causal_samples; ++i) {
    const GroupElement z = GroupElement::center(zi(rng));
    const double t1 = u(rng), n1 = u(rng), t2 = u(rng), n2 = u(rng);
    const GroupElement an = GroupElement::cartan(t1) * GroupElement::nil(n1);
    const GroupElement anbar = GroupElement::cartan(t2) * exp_map(n2 * AlgebraVector::F());
    GroupElement x;
    switch (pick(rng)) {
      case 0: x = z * an; break;
      case 1: x = z * anbar; break;
      case 2: x = j * z * an; break;
      default: x = j * z * anbar; break;
    }
    const CausalClass cc = causal_character(xi, x);
    const bool s = in_singularity(x), h = in_horizon(x);
    if (!s && !h) ++unclassified;
    if (s) {
      ++s_count;
      if (cc != CausalClass::NULL_SET && cc != CausalClass::FIXED_POINT) ++s_bad;
    }
    if (h) {
      ++h_count;
      if (cc != CausalClass::SPACELIKE_REGION) ++h_bad;
    }
  }
  c.checks = {equal("S points not null", static_cast<double>(s_bad), tol("causal.incoherent")),
              equal("H points not spacelike", static_cast<double>(h_bad), tol("causal.incoherent")),
              equal("points in neither class", static_cast<double>(unclassified), 0)};
  c.info = {{"S points", static_cast<double>(s_count)}, {"H points", static_cast<double>(h_count)}};
  return c;
}

// ---------------------------------------------------------------- 4

Criterion bfield_suite(const RunConfig& cfg) {
  Criterion c{4, "bfield", {}, {}};
  auto rng = rng_for(cfg, 4);
  std::uniform_real_distribution<double> up(-3, 3), us(-2, 2);
  auto worst = [&](const BFieldProfile& f) {
    const BFieldCalibration cal = calibrate_bfield(f);
    double w = 0;
    for (int k = 0; k <= 120; ++k) {
      const double a = -3 + 0.05 * k;
      w = std::max(w, bfield_check(f, cal, twisted_iwasawa_compose({a, up(rng), us(rng)})));
    }
    return w;
  };
  c.checks = {below("tanh profile residual on [-3,3]", worst(tanh_profile()), tol("bfield.residual"))};
  c.info = {{"volume-matched profile residual", worst(volume_matched_profile())}};
  return c;
}

// ---------------------------------------------------------------- 5

Criterion torus_suite(const RunConfig& cfg) {
  Criterion c{5, "torus", {}, {}};
  const DeformationMatrix J = DeformationMatrix::standard2();
  auto rng = rng_for(cfg, 5);
  std::uniform_int_distribution<long> um(-6, 6);
  std::uniform_real_distribution<double> ut(-3, 3);
  auto mode = [&] { return Mode{um(rng), um(rng)}; };
  auto diff = [](const TrigPolynomial& a, const TrigPolynomial& b) { return (a - b).max_abs(); };
  long exponent = 0;
  double assoc = 0, unit = 0, invol = 0, trace_d = 0;
  const TrigPolynomial one = TrigPolynomial::mode({0, 0});
  for (int i = 0; i < cfg.samples; ++i) {
    const Mode m = mode(), n = mode(), p = mode();
    const double th = ut(rng);
    const Mode mn{m[0] + n[0], m[1] + n[1]}, np{n[0] + p[0], n[1] + p[1]};
    if (J.pairing(m, n) + J.pairing(mn, p) != J.pairing(n, p) + J.pairing(m, np)) ++exponent;
    const TrigPolynomial em = TrigPolynomial::mode(m), en = TrigPolynomial::mode(n), ep = TrigPolynomial::mode(p);
    // Rounded phases carry error relative to their argument.
    const double arg = std::abs(th) * (std::abs(J.pairing(m, n)) + std::abs(J.pairing(mn, p)) +
                                       std::abs(J.pairing(n, p)) + std::abs(J.pairing(m, np)));
    assoc = std::max(assoc, diff(star_theta(star_theta(em, en, th, J), ep, th, J),
                                 star_theta(em, star_theta(en, ep, th, J), th, J)) / (1 + arg));
    unit = std::max({unit, diff(star_theta(em, one, th, J), em), diff(star_theta(one, em, th, J), em)});
    invol = std::max(invol, diff(star_theta(em, en, th, J).conj(), star_theta(en.conj(), em.conj(), th, J)));
    trace_d = std::max({trace_d, std::abs(trace(star_theta(em, en, th, J)) - trace(star_theta(en, em, th, J))),
                        std::abs(trace(star_theta(em, en, th, J)) - trace(pointwise(em, en)))});
  }
  double qrel = 0;
  const TrigPolynomial u = TrigPolynomial::mode({1, 0}), v = TrigPolynomial::mode({0, 1});
  for (double th : {0.1, 0.7, 2.5})
    qrel = std::max(qrel, diff(star_theta(u, v, th, J), std::polar(1.0, 2 * kTorusKappa * th) * star_theta(v, u, th, J)));

  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<long> small(-1, 1);
  double spread = 0, pinned = 0;
  int pairs = 0;
  while (pairs < 10) {
    TrigPolynomial x, y;
    for (int k = 0; k < 4; ++k) {
      x.coeffs[{small(rng), small(rng)}] += cplx(gauss(rng), gauss(rng));
      y.coeffs[{small(rng), small(rng)}] += cplx(gauss(rng), gauss(rng));
    }
    const FirstOrderResult r = first_order_check(x, y, J);
    if (r.central) continue;
    ++pairs;
    for (const cplx& q : r.ratios) spread = std::max(spread, std::abs(q - r.ratio));
    pinned = std::max(pinned, std::abs(r.ratio - cplx(0, -2 * kTorusKappa)));
  }
  c.checks = {equal("integer exponent mismatches", static_cast<double>(exponent), 0),
              below("associativity", assoc, tol("torus.ulp")),
              equal("unit", unit, 0),
              below("involution", invol, tol("torus.ulp")),
              below("trace", trace_d, tol("torus.ulp")),
              below("u*v - e^{2i kappa theta} v*u", qrel, tol("torus.ulp")),
              below("first-order ratio spread over theta", spread, tol("torus.first_order")),
              below("first-order ratio vs -2i kappa", pinned, tol("torus.first_order"))};
  c.info = {{"kappa", kTorusKappa}};
  return c;
}

// ---------------------------------------------------------------- 6

Criterion symsym_suite(const RunConfig& cfg) {
  Criterion c{6, "symsym", {}, {}};
  auto rng = rng_for(cfg, 6);
  std::uniform_real_distribution<double> u(-1.5, 1.5), u2(-2, 2);
  auto point = [&] { return SymPoint{u(rng), u(rng)}; };
  double fixed = 0, invol = 0;
  long det_bad = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const SymPoint x = point(), y = point();
    fixed = std::max(fixed, distance(symmetry(x, x), x) / (1 + std::abs(x.l)));
    invol = std::max(invol, distance(symmetry(x, symmetry(x, y)), y) /
                                (1 + std::abs(x.l) * std::cosh(x.a - y.a) + std::abs(y.l)));
    const auto j = symmetry_jacobian(x, y);
    if (j[0] * j[3] - j[1] * j[2] != 1.0) ++det_bad;
  }
  const TransvectionAlgebra alg = transvection_generators();
  double table = 0;
  for (int i = 0; i < 100; ++i) {
    const SymPoint p = point();
    table = std::max({table, distance(lie_bracket(alg.h, alg.e_plus, p), alg.e_plus(p)),
                      distance(lie_bracket(alg.h, alg.e_minus, p), -1.0 * alg.e_minus(p)),
                      distance(lie_bracket(alg.e_plus, alg.e_minus, p), {0, 0})});
  }
  double reflect = 0;
  for (int i = 0; i < 30; ++i) {
    const SymPoint a{u2(rng), u2(rng)}, b{u2(rng), u2(rng)};
    const GeodesicArc arc = geodesic(a, b), back = geodesic(a, symmetry(a, b));
    for (int k = 0; k <= arc.steps; k += 10)
      reflect = std::max(reflect, distance(symmetry(a, arc.points[k]), back.points[k]));
    reflect = std::max(reflect, distance(symmetry(arc.points[arc.steps / 2], a), b));
  }
  double fourth = 0, fixed4 = 0, s_inv = 0, a_inv = 0;
  for (int i = 0; i < 200; ++i) {
    const SymPoint x = point(), y = point(), z = point(), w = point();
    const SymPoint t = fourth_point(x, y, z);
    fourth = std::max(fourth, distance(fourth_point_newton(x, y, z), t));
    fixed4 = std::max(fixed4, distance(symmetry(x, symmetry(y, symmetry(z, t))), t));
    const SymPoint sx = symmetry(w, x), sy = symmetry(w, y), sz = symmetry(w, z);
    s_inv = std::max(s_inv, std::abs(phase_S(sx, sy, sz) - phase_S(x, y, z)));
    a_inv = std::max(a_inv, std::abs(amplitude_A(sx, sy, sz) - amplitude_A(x, y, z)) / amplitude_A(x, y, z));
  }
  // Golden triple: Stokes and interior quadratures of the same triangle, and the frozen closed form.
  const auto v = midpoint_triangle({0, 0}, {1, 0}, {0, 1});
  const double stokes = triangle_area(v[0], v[1], v[2]), interior = triangle_area_interior(v[0], v[1], v[2]);
  const double golden = -2.3504023872876028;
  c.checks = {below("s_x(x) = x", fixed, 4 * kEps),
              below("s_x involution", invol, 16 * kEps),
              equal("symmetry Jacobians with det != 1", static_cast<double>(det_bad), 0),
              below("transvection commutator table", table, tol("symsym.transvection")),
              below("geodesic symmetry reflection", reflect, tol("symsym.reflection")),
              below("fourth point closed form vs Newton", fourth, tol("symsym.fourth_point")),
              below("s_x s_y s_z t = t", fixed4, tol("symsym.fourth_point")),
              below("S diagonal invariance", s_inv, tol("symsym.invariance")),
              below("A diagonal invariance", a_inv, tol("symsym.invariance")),
              below("golden S: Stokes vs interior", std::abs(stokes - interior) / std::abs(stokes), tol("symsym.golden")),
              below("golden S: Stokes vs frozen value", std::abs(stokes - golden) / std::abs(golden), tol("symsym.golden"))};
  c.info = {{"golden S", stokes}};
  return c;
}

// ---------------------------------------------------------------- 7

double order(double coarse, double fine, const StarGrid& gc, const StarGrid& gf) {
  return std::log(coarse / fine) / std::log(gc.h / gf.h);
}

Criterion star_suite(const RunConfig& cfg) {
  Criterion c{7, "star", {}, {}};
  StarOptions opt;
  opt.theta = cfg.theta;
  const Profile pu = gaussian_bump({-0.3, 0.2}), pv = gaussian_bump({0.3, -0.2}), pw = gaussian_bump({0.0, 0.3});
  const StarGrid gc = StarGrid::make(cfg.grid), gf = StarGrid::make(cfg.refine_grid);
  const StarReport coarse = star_report(gc, opt, pu, pv, pw);
  const StarReport fine = star_report(gf, opt, pu, pv, pw);

  // theta -> 0 on a compact window with wide bumps: commutator along the Poisson bracket, symmetric part to uv.
  const StarGrid gs = StarGrid::make(cfg.grid, 3.5, 5);
  const Field u = sample(gs, gaussian_bump({-0.2, 0.1}, 0.5, 1.6)), v = sample(gs, gaussian_bump({0.2, -0.1}, 0.5, 1.6));
  // Spectral bracket: centered differences carry an O(h^2) bias comparable to the tolerance.
  const Field p = grid_derivative(gs, u, 0).cwiseProduct(grid_derivative(gs, v, 1)) -
                  grid_derivative(gs, u, 1).cwiseProduct(grid_derivative(gs, v, 0));
  const Field uv0 = u.cwiseProduct(v);
  std::array<cplx, 3> ratio;
  std::array<double, 3> sym;
  for (int k = 0; k < 3; ++k) {
    StarOptions o;
    o.theta = 0.2 / (1 << k);
    const StarEngine e(gs, o);
    const Field a = e.product(u, v), b = e.product(v, u);
    ratio[k] = ((a - b) / o.theta).cwiseProduct(p.conjugate()).sum() / p.squaredNorm();
    sym[k] = interior_relative_defect(gs, ((a + b) / 2.0).eval(), uv0);
  }
  // (u*v - v*u)/theta = -i c {u,v} + O(theta^2): two Richardson steps in theta^2.
  const cplx r1 = (4.0 * ratio[1] - ratio[0]) / 3.0, r2 = (4.0 * ratio[2] - ratio[1]) / 3.0;
  const cplx pinned = cplx(0, 1) * (16.0 * r2 - r1) / 15.0;
  c.checks = {below("trace defect", coarse.trace_defect, tol("star.trace")),
              below("associativity defect", coarse.assoc_defect, tol("star.assoc")),
              below("trace defect refined / coarse", fine.trace_defect / coarse.trace_defect, 1),
              below("associativity refined / coarse", fine.assoc_defect / coarse.assoc_defect, 1),
              above("trace order", order(coarse.trace_defect, fine.trace_defect, gc, gf), tol("star.order")),
              above("associativity order", order(coarse.assoc_defect, fine.assoc_defect, gc, gf), tol("star.order")),
              below("|c - 1|, c the first-order constant", std::abs(pinned - 1.0), tol("star.pinned_c")),
              below("symmetric part vs uv at smallest theta", sym[2], tol("star.commutative")),
              above("symmetric part order in theta", std::log2(sym[1] / sym[2]), tol("star.order"))};
  c.info = {{"trace defect refined", fine.trace_defect},
            {"associativity defect refined", fine.assoc_defect},
            {"c real part", pinned.real()},
            {"c imaginary part", pinned.imag()}};
  return c;
}

// ---------------------------------------------------------------- 8

DomainFn chart_bump(const DomainOrbit& orbit, SymPoint center) {
  const Profile p = gaussian_bump(center);
  return [orbit, p](const GroupElement& x) {
    const ANElement r = orbit.chart(x);
    return p(r.t, r.s);
  };
}

Criterion udf_suite(const RunConfig& cfg) {
  Criterion c{8, "udf", {}, {}};
  auto rng = rng_for(cfg, 8);
  std::uniform_real_distribution<double> u(-2, 2);
  const OrbitIdentification id{{0.4, -0.7}};
  double kernel = 0;
  for (int k = 0; k < 200; ++k) {
    const ANElement r{u(rng), u(rng)}, g{u(rng), u(rng)}, h{u(rng), u(rng)}, l{u(rng), u(rng)};
    const cplx k0 = kernel_on_group(g, h, l, cfg.theta, id);
    const cplx k1 = kernel_on_group(an_multiply(r, g), an_multiply(r, h), an_multiply(r, l), cfg.theta, id);
    kernel = std::max(kernel, std::abs(k1 - k0) / std::abs(k0));
  }

  StarOptions opt;
  opt.theta = cfg.theta;
  const StarGrid g = StarGrid::make(cfg.covariance_grid);
  const StarEngine engine(g, opt);
  // The mass is chosen so the Z generator moves the chart by four whole grid rows.
  const double step = 4 * g.h;
  const BhtzRAction act = bhtz_raction(DomainKind::SPINLESS, 4 * step * step, 0);
  const DomainOrbit orbit{act, 0, 0.4};
  const DomainFn fa = chart_bump(orbit, {-0.3, 0.2}), fb = chart_bump(orbit, {0.3, -0.2});
  const double comm = covariance_defect(engine, orbit, fa, fb, commutant_map(orbit, {2 * g.h, 0.4}));
  const double tau = covariance_defect(engine, orbit, fa, fb, raction_map(act, {step, 0.3}));
  const double z = covariance_defect(engine, orbit, fa, fb, raction_map(act, act.z_element(1)));

  const StarGrid gs = StarGrid::make(cfg.grid);
  const StarEngine es(gs, opt);
  const BhtzRAction sl = bhtz_raction(DomainKind::SPINLESS, cfg.mass, 0);
  const DomainOrbit o1{sl, -1, 0.4};
  const double swap = sigma_swap_defect(es, sl, 0.4, chart_bump(o1, {-0.3, 0.2}), chart_bump(o1, {0.3, -0.2}));

  c.checks = {below("transported kernel left invariance", kernel, tol("udf.kernel")),
              below("covariance, right action of R on the orbit", comm, tol("udf.covariance")),
              below("covariance, R-action tau", tau, tol("udf.covariance")),
              below("Z-invariance preservation", z, tol("udf.z_invariance")),
              below("spinless sigma swap", swap, tol("udf.sigma_swap"))};
  c.info = {{"covariance grid", static_cast<double>(g.n)}, {"Z mass", 4 * step * step}};
  return c;
}

// ---------------------------------------------------------------- 9

struct Gauss3 {
  double a0, t0, s0, sa, st;
  double value(double a, double t, double s) const {
    return std::exp(-(a - a0) * (a - a0) / (2 * sa * sa) - ((t - t0) * (t - t0) + (s - s0) * (s - s0)) / (2 * st * st));
  }
};

Field slice(const StarGrid& g, const Gauss3& f, double a) {
  Field out(g.na, g.nl);
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) out(i, j) = f.value(a, g.a(i), g.l(j));
  return out;
}

Criterion spectral_suite(const RunConfig& cfg) {
  Criterion c{9, "spectral", {}, {}};
  const auto gm = gammas();
  const Mat2c kf = krein_form();
  double clifford = 0, krein = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Mat2c ac = gm[i] * gm[j] + gm[j] * gm[i] - 2 * (i == j ? kEta[i] : 0.0) * Mat2c::Identity();
      clifford = std::max(clifford, ac.cwiseAbs().maxCoeff());
    }
    krein = std::max(krein, (kf * gm[i] + gm[i].adjoint() * kf).cwiseAbs().maxCoeff());
  }

  StarOptions opt;
  opt.theta = cfg.theta;
  const StarGrid g = StarGrid::make(cfg.grid);
  const StarEngine e(g, opt);
  const Field a = slice(g, {0, -0.3, 0.2, 1, 0.25}, 0), b = slice(g, {0, 0.3, -0.2, 1, 0.25}, 0);
  const double dh = derivation_check(e, ChartField::RIGHT_H, a, b).defect;
  const double de = derivation_check(e, ChartField::RIGHT_E, a, b).defect;
  const double dn = derivation_check(e, ChartField::LEFT_E, a, b).defect;

  const DiracFrame fr = DiracFrame::build(bhtz_raction(DomainKind::SPINLESS, cfg.mass, 0));
  const Gauss3 g0{0.1, -0.3, 0.2, 0.4, 0.25}, g1{-0.1, 0.3, -0.2, 0.4, 0.25}, ga{0.0, 0.1, 0.3, 0.4, 0.25};
  std::array<double, 2> dirac{};
  for (int pass = 0; pass < 2; ++pass) {
    const StarGrid gg = StarGrid::make(pass == 0 ? cfg.grid : cfg.covariance_grid);
    const StarEngine ee(gg, opt);
    SlicedSpinor psi;
    psi.a0 = 0.2;
    std::array<Field, 3> av;
    for (int k = 0; k < 3; ++k) {
      const double at = psi.a0 + (k - 1) * psi.da;
      psi.slices[k] = {cplx(1, 0.3) * slice(gg, g0, at), cplx(-0.4, 1) * slice(gg, g1, at)};
      av[k] = slice(gg, ga, at);
    }
    dirac[pass] = dirac_commutator_check(fr, ee, av, psi).defect;
  }
  c.checks = {equal("Clifford relations", clifford, 0),
              equal("Krein compatibility", krein, 0),
              below("derivation defect, Y_h", dh, tol("spectral.derivation")),
              below("derivation defect, Y_e", de, tol("spectral.derivation")),
              above("negative control d_s", dn, tol("spectral.control")),
              below("Dirac commutator defect", dirac[0], tol("spectral.dirac")),
              below("Dirac commutator refined / coarse", dirac[1] / dirac[0], 1)};
  c.info = {{"Dirac commutator defect refined", dirac[1]}};
  return c;
}

}  // namespace

bool Check::pass() const {
  switch (rel) {
    case Relation::BELOW: return value < bound;
    case Relation::ABOVE: return value > bound;
    case Relation::EQUAL: return value == bound;
  }
  return false;
}

bool Criterion::pass() const {
  for (const Check& k : checks)
    if (!k.pass()) return false;
  return !checks.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"group", "metric", "causal", "bfield", "torus",
                                             "symsym", "star", "udf", "spectral", "repro"};
  return n;
}

std::vector<int> criteria_for(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto& n = suite_names();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == suite) return {static_cast<int>(i) + 1};
  throw ConfigError("unknown suite '" + suite + "'");
}

Criterion run_criterion(int id, const RunConfig& cfg) {
  switch (id) {
    case 1: return group_suite(cfg);
    case 2: return metric_suite(cfg);
    case 3: return causal_suite(cfg);
    case 4: return bfield_suite(cfg);
    case 5: return torus_suite(cfg);
    case 6: return symsym_suite(cfg);
    case 7: return star_suite(cfg);
    case 8: return udf_suite(cfg);
    case 9: return spectral_suite(cfg);
    default: throw ConfigError("no criterion " + std::to_string(id));
  }
}

std::vector<Criterion> run_suite(const std::string& suite, const RunConfig& cfg) {
  const std::vector<int> ids = criteria_for(suite);
  std::vector<Criterion> out;
  for (int id : ids)
    if (id != 10) out.push_back(run_criterion(id, cfg));
  if (ids.back() != 10) return out;

  // Rerun 1-9 with a different worker count and compare the serialized reports byte for byte.
  const char* prev = std::getenv("ADSDEFORM_THREADS");
  const std::string saved = prev ? prev : "";
  const unsigned workers = worker_count();
  setenv("ADSDEFORM_THREADS", std::to_string(workers == 1 ? 3 : 1).c_str(), 1);
  std::vector<Criterion> again;
  for (int id : ids)
    if (id != 10) again.push_back(run_criterion(id, cfg));
  if (prev)
    setenv("ADSDEFORM_THREADS", saved.c_str(), 1);
  else
    unsetenv("ADSDEFORM_THREADS");
  const std::string first = to_json(out).dump(), second = to_json(again).dump();
  Criterion r{10, "repro", {}, {}};
  long differing = 0;
  for (std::size_t i = 0; i < std::max(first.size(), second.size()); ++i)
    if (i >= first.size() || i >= second.size() || first[i] != second[i]) ++differing;
  r.checks = {equal("differing report bytes between runs", static_cast<double>(differing), 0)};
  r.info = {{"report bytes", static_cast<double>(first.size())}};
  out.push_back(r);
  return out;
}

const std::vector<int>& documented_red() {
  static const std::vector<int> r = {4, 8};
  return r;
}

nlohmann::json tolerance_table() {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [k, v] : tolerances()) t[k] = v;
  return t;
}

nlohmann::json to_json(const Criterion& c) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& k : c.checks) {
    const char* rel = k.rel == Relation::BELOW ? "<" : k.rel == Relation::ABOVE ? ">" : "==";
    checks.push_back({{"name", k.name}, {"value", k.value}, {"relation", rel}, {"bound", k.bound}, {"pass", k.pass()}});
  }
  nlohmann::json info = nlohmann::json::object();
  for (const auto& [k, v] : c.info) info[k] = v;
  return {{"criterion", c.id}, {"suite", c.suite}, {"pass", c.pass()}, {"checks", checks}, {"info", info}};
}

nlohmann::json to_json(const std::vector<Criterion>& cs) {
  nlohmann::json a = nlohmann::json::array();
  for (const Criterion& c : cs) a.push_back(to_json(c));
  return a;
}

nlohmann::json envelope(const std::string& command, const RunConfig& cfg, nlohmann::json result) {
  return {{"tool", "adsdeform"},
          {"version", kVersion},
          {"command", command},
          {"config", to_json(cfg)},
          {"config_hash", config_hash(cfg)},
          {"tolerances", tolerance_table()},
          {"result", std::move(result)}};
}

}  // namespace adsdeform
