#include "adsdeform/bhtz.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cstdint>
#include <stdexcept>

namespace adsdeform {

MassMomentum mass_momentum(const KillingPair& xi) {
  const double l = killing_form(xi.xl, xi.xl), r = killing_form(xi.xr, xi.xr);
  return {l + r, l - r, l > 1e-12 && r > 1e-12};
}

KillingPair pair_from_mass_spin(double mass, double spin) {
  if (!(mass > std::abs(spin))) throw std::invalid_argument("need M > |J| for a generic pair");
  const AlgebraVector h = AlgebraVector::H();
  return {std::sqrt((mass + spin) / 2) * h, -std::sqrt((mass - spin) / 2) * h};
}

bool is_spinless(const KillingPair& xi, double tol) { return (xi.xl + xi.xr).max_abs() < tol; }

GroupElement z_action(const KillingPair& xi, long n, const GroupElement& x) {
  if (!mass_momentum(xi).generic) throw std::invalid_argument("z_action: Killing pair is not generic");
  const double dn = static_cast<double>(n);
  return exp_map(dn * xi.xl) * x * exp_map(dn * xi.xr);
}

GroupElement coset_rep(double phi, double s) { return GroupElement::k(phi) * GroupElement::nil(s); }

TwistedCoords twisted_iwasawa_decompose(const GroupElement& x) {
  // x = k(phi) n a n k(phi); phi solves Kangle(x k(-phi)) = phi, a strictly decreasing
  // residual with its root inside ((beta - pi)/2, (beta + pi)/2).
  auto residual = [&](double phi) { return (x * GroupElement::k(-phi)).phi - phi; };
  const double lo = 0.5 * (x.phi - kPi), hi = 0.5 * (x.phi + kPi);
  double phi;
  const double flo = residual(lo), fhi = residual(hi);
  if (flo == 0) {
    phi = lo;
  } else if (fhi == 0) {
    phi = hi;
  } else {
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(residual, lo, hi, flo, fhi,
                                               boost::math::tools::eps_tolerance<double>(50), iters);
    phi = 0.5 * (r.first + r.second);
  }
  const GroupElement u = GroupElement::k(-phi) * x * GroupElement::k(-phi);
  if (std::abs(u.phi) > 1e-8)
    throw std::runtime_error("twisted_iwasawa_decompose: residual " + std::to_string(u.phi));
  const double t = u.a;
  return {std::numbers::sqrt2 * t, phi, u.n / (1 + std::exp(t))};
}

GroupElement twisted_iwasawa_compose(const TwistedCoords& c) {
  const GroupElement g = coset_rep(c.phi, c.s);
  return twisted_conjugate(g, GroupElement::cartan(c.a / std::numbers::sqrt2));
}

TwistedCoords coset_left_multiply(const GroupElement& g, const TwistedCoords& c) {
  const GroupElement p = g * coset_rep(c.phi, c.s);
  return {c.a, p.phi, p.n};
}

void coset_tangent_ef(const TwistedCoords& c, const ChartTangent& v, double& ye, double& yf) {
  // g^-1 dg = dphi (2s H0 + (1+s^2) E - F) + ds E for g = k(phi) n(s)
  ye = (1 + c.s * c.s) * v.dphi + v.ds;
  yf = -v.dphi;
}

double orbit_metric(double ve, double vf, double we, double wf) { return -2 * (ve * wf + vf * we); }

double fiber_scale(double a) {
  const double ch = std::cosh(a / (2 * std::numbers::sqrt2));
  return 8 * ch * ch;
}

double metric_eval(const TwistedCoords& at, const ChartTangent& v, const ChartTangent& w) {
  double ve, vf, we, wf;
  coset_tangent_ef(at, v, ve, vf);
  coset_tangent_ef(at, w, we, wf);
  return v.da * w.da - fiber_scale(at.a) * orbit_metric(ve, vf, we, wf);
}

AlgebraVector killing_vector_at(const KillingPair& xi, const GroupElement& x) {
  return adjoint(inverse(x), xi.xl) + xi.xr;
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::SPACELIKE_REGION: return "spacelike";
    case CausalClass::NULL_SET: return "null";
    case CausalClass::TIMELIKE_REGION: return "timelike";
    case CausalClass::FIXED_POINT: return "fixed";
  }
  return "?";
}

double null_band(const GroupElement& x, double scale) {
  const double nx = x.matrix().frobenius();
  return scale * (1 + nx * nx);
}

CausalClass causal_character(const KillingPair& xi, const GroupElement& x, double scale) {
  if (!mass_momentum(xi).generic) throw std::invalid_argument("causal_character: pair is not generic");
  const AlgebraVector v = killing_vector_at(xi, x);
  const double eps = null_band(x, scale);
  if (v.max_abs() < eps) return CausalClass::FIXED_POINT;
  const double q = killing_form(v, v);
  if (q > eps) return CausalClass::SPACELIKE_REGION;
  if (q < -eps) return CausalClass::TIMELIKE_REGION;
  return CausalClass::NULL_SET;
}

namespace {
bool angle_in_pi_z(double phi, double tol) {
  const double q = phi / kPi;
  return std::abs(q - std::round(q)) * kPi < tol;
}
}  // namespace

bool in_za_n(const GroupElement& x, double tol) { return angle_in_pi_z(x.phi, tol); }

bool in_za_nbar(const GroupElement& x, double tol) {
  // J^-1 (A Nbar) J = A N.
  const GroupElement j = GroupElement::J();
  return in_za_n(inverse(j) * x * j, tol);
}

bool in_singularity(const GroupElement& x, double tol) { return in_za_n(x, tol) || in_za_nbar(x, tol); }

bool in_horizon(const GroupElement& x, double tol) {
  const GroupElement y = inverse(GroupElement::J()) * x;
  return in_za_n(y, tol) || in_za_nbar(y, tol);
}

long component_id(const KillingPair& xi, const GroupElement& x) {
  if (!is_spinless(xi)) throw std::invalid_argument("component_id: spinless pairs only");
  if (causal_character(xi, x) != CausalClass::SPACELIKE_REGION)
    throw std::domain_error("component_id: point is not in the spacelike region");
  // Spacelike <=> sin(2 phi) sin(2 phi + 2 atan s) > 0 in the twisted chart; both angles
  // then lie in the same interval (m pi, (m+1) pi), and zJ sits at phi = pi/4 + m pi/2.
  const TwistedCoords c = twisted_iwasawa_decompose(x);
  const double u = 2 * c.phi, v = u + 2 * std::atan(c.s);
  const double m1 = std::floor(u / kPi), m2 = std::floor(v / kPi);
  if (m1 != m2) throw std::domain_error("component_id: chart escaped the spacelike region");
  return static_cast<long>(m1);
}

RotParams::RotParams(double al) : alpha(al) {
  if (!(std::abs(al) < 1)) throw std::invalid_argument("RotParams: |alpha| must be < 1");
}

namespace {
// A-coordinate in the ANK ordering: y = a(t) n k has |row 2 of y| = exp(-t/2).
double ank_a(const GroupElement& y) {
  const Mat2 m = y.matrix();
  return -std::log(m.m10 * m.m10 + m.m11 * m.m11);
}
}  // namespace

ModifiedIwasawa modified_iwasawa_decompose(const GroupElement& x, const RotParams& p) {
  const Mat2 m = x.matrix();
  const double p2 = m.m10 * m.m10, q2 = m.m11 * m.m11, al = p.alpha;
  // t = A(x a(-alpha t)) <=> g(t) = -log(p2 e^{-alpha t} + q2 e^{alpha t}) - t = 0, g' <= |alpha| - 1.
  auto g = [&](double t) {
    const double em = p2 * std::exp(-al * t), ep = q2 * std::exp(al * t);
    const double val = -std::log(em + ep) - t;
    const double der = -al * (ep - em) / (em + ep) - 1;
    return std::make_pair(val, der);
  };
  const double t0 = ank_a(x);
  const double bound = std::abs(t0) / (1 - std::abs(al)) + 1;
  std::uintmax_t iters = 100;
  const double t = boost::math::tools::newton_raphson_iterate(g, t0, -bound, bound, 50, iters);
  if (std::abs(g(t).first) > 1e-10 * (1 + std::abs(t)))
    throw std::runtime_error("modified_iwasawa_decompose: Newton residual " + std::to_string(g(t).first));
  const GroupElement y = x * GroupElement::cartan(-al * t);
  const GroupElement yi = inverse(y);  // y^-1 = k n a  =>  y = a^-1 n^-1 k^-1
  return {-yi.a, -yi.n, -yi.phi};
}

GroupElement modified_iwasawa_compose(const ModifiedIwasawa& m, const RotParams& p) {
  return GroupElement::cartan(m.t) * GroupElement::nil(m.s) * GroupElement::k(m.kappa) *
         GroupElement::cartan(p.alpha * m.t);
}

GroupElement ANElement::group() const { return GroupElement::cartan(t) * GroupElement::nil(s); }

ANElement an_multiply(const ANElement& x, const ANElement& y) {
  return {x.t + y.t, std::exp(-y.t) * x.s + y.s};
}

ANElement an_inverse(const ANElement& x) { return {-x.t, -std::exp(x.t) * x.s}; }

GroupElement taub_action(const ANElement& r, const GroupElement& x, const RotParams& p) {
  return r.group() * x * GroupElement::cartan(p.alpha * r.t);
}

RotParams rot_params_of(const KillingPair& xi, double& c_left) {
  const double hl = xi.xl.h, hr = xi.xr.h;
  if (std::abs(xi.xl.e) + std::abs(xi.xl.f) + std::abs(xi.xr.e) + std::abs(xi.xr.f) > 1e-12 || hl == 0)
    throw std::invalid_argument("rot_params_of: pair must lie in the split Cartan direction");
  c_left = hl * std::numbers::sqrt2;  // xl = c_left H
  return RotParams(hr / hl);
}

ExtensionLabel coset_extension_label(double phi, double s, double tol) {
  const AlgebraVector zeta = adjoint(coset_rep(phi, s), AlgebraVector::H());
  const double val = killing_form(AlgebraVector::E(), zeta);
  ExtensionLabel out;
  if (std::abs(val) <= tol) return out;
  out.member = true;
  out.sign = val > 0 ? 1 : -1;
  // Boundary lines phi = m pi and phi = pi/2 - atan(s) + m pi never cross inside the strip.
  const double m = std::floor(phi / kPi);
  const bool upper = phi >= kPi / 2 - std::atan(s) + m * kPi;
  out.sheet = 2 * static_cast<long>(m) + (upper ? 1 : 0);
  return out;
}

ExtensionLabel extension_domain_membership(const KillingPair& xi, const GroupElement& x, double tol) {
  if (!mass_momentum(xi).generic) throw std::invalid_argument("extension_domain: pair is not generic");
  if (!is_spinless(xi)) return {true, 1, 0};
  const TwistedCoords c = twisted_iwasawa_decompose(x);
  return coset_extension_label(c.phi, c.s, tol);
}

TwistedCoords sheet_reference(long sheet, double a) {
  const long m = sheet >= 0 ? sheet / 2 : -((-sheet + 1) / 2);
  const bool odd = (sheet - 2 * m) == 1;
  return {a, kPi * static_cast<double>(m) + (odd ? 3 * kPi / 4 : kPi / 4), 0};
}

ANElement sheet_r_coords(const TwistedCoords& c, long sheet) {
  // Ad(a(t) n(s)) (h0, e0, f0) = (h0 + 2 s f0, e^t (...), e^-t f0) on the orbit of H.
  const TwistedCoords ref = sheet_reference(sheet, c.a);
  const AlgebraVector z0 = adjoint(coset_rep(ref.phi, ref.s), AlgebraVector::H());
  const AlgebraVector z = adjoint(coset_rep(c.phi, c.s), AlgebraVector::H());
  if (z.f * z0.f <= 0) throw std::domain_error("sheet_r_coords: coset is not on this sheet");
  return {std::log(z0.f / z.f), (z.h - z0.h) / (2 * z0.f)};
}

TwistedCoords sheet_point(long sheet, const ANElement& r, double a) {
  return coset_left_multiply(r.group(), sheet_reference(sheet, a));
}

}  // namespace adsdeform
