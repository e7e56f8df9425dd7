#include "adsdeform/udf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adsdeform {

SymPoint r_action(const ANElement& r, const SymPoint& p) { return {p.a + r.t, p.l + r.s * std::exp(-p.a)}; }

SymPoint OrbitIdentification::point(const ANElement& r) const { return r_action(r, base); }

ANElement OrbitIdentification::element(const SymPoint& p) const {
  return {p.a - base.a, (p.l - base.l) * std::exp(base.a)};
}

std::complex<double> kernel_on_group(const ANElement& g1, const ANElement& g2, const ANElement& g3, double theta,
                                     const OrbitIdentification& id) {
  const SymPoint x = id.point(g1), y = id.point(g2), z = id.point(g3);
  return kStarC0 / (theta * theta) * amplitude_A(x, y, z) * std::polar(1.0, phase_S_closed(x, y, z) / theta);
}

double left_translation_jacobian(const ANElement& r, const ANElement& g) {
  const double eps = 1e-6;
  auto f = [&](double t, double s) { return an_multiply(r, {t, s}); };
  const ANElement tp = f(g.t + eps, g.s), tm = f(g.t - eps, g.s), sp = f(g.t, g.s + eps), sm = f(g.t, g.s - eps);
  const double a = (tp.t - tm.t) / (2 * eps), b = (sp.t - sm.t) / (2 * eps);
  const double c = (tp.s - tm.s) / (2 * eps), d = (sp.s - sm.s) / (2 * eps);
  return std::abs(a * d - b * c);
}

GroupElement BhtzRAction::act(const ANElement& r, const GroupElement& x) const {
  if (kind == DomainKind::SPINLESS) return twisted_conjugate(r.group(), x);
  return taub_action(r, x, RotParams(alpha));
}

// exp(n c H) = a(n c / sqrt 2) since H = H0 / sqrt 2.
ANElement BhtzRAction::z_element(long n) const {
  return {static_cast<double>(n) * c_left / std::numbers::sqrt2, 0};
}

BhtzRAction bhtz_raction(DomainKind kind, double mass, double spin) {
  BhtzRAction out;
  out.kind = kind;
  out.xi = pair_from_mass_spin(mass, spin);
  if (kind == DomainKind::SPINLESS) {
    if (!is_spinless(out.xi)) throw std::invalid_argument("bhtz_raction: spinless action needs J = 0");
    out.c_left = std::sqrt(mass / 2);
  } else {
    if (is_spinless(out.xi)) throw std::invalid_argument("bhtz_raction: rotating action needs J != 0");
    out.alpha = rot_params_of(out.xi, out.c_left).alpha;
  }
  return out;
}

GroupElement DomainOrbit::base() const { return point({0, 0}); }

GroupElement DomainOrbit::point(const ANElement& rho) const {
  const ANElement r = an_inverse(rho);
  if (action.kind == DomainKind::SPINLESS) return twisted_iwasawa_compose(sheet_point(sheet, r, a));
  return modified_iwasawa_compose({r.t, r.s, kappa}, RotParams(action.alpha));
}

ANElement DomainOrbit::chart(const GroupElement& x) const {
  if (action.kind == DomainKind::SPINLESS)
    return an_inverse(sheet_r_coords(twisted_iwasawa_decompose(x), sheet));
  const ModifiedIwasawa m = modified_iwasawa_decompose(x, RotParams(action.alpha));
  return an_inverse({m.t, m.s});
}

double alpha_x(const DomainFn& f, const BhtzRAction& act, const GroupElement& x, const ANElement& g) {
  return f(act.act(an_inverse(g), x));
}

Field sample_on_orbit(const StarGrid& g, const DomainOrbit& orbit, const DomainFn& f) {
  Field out(g.na, g.nl);
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) out(i, j) = f(orbit.point({g.a(i), g.l(j)}));
  return out;
}

Field udf_product(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa, const DomainFn& fb) {
  // In the chart x = tau_{rho^-1} p, alpha^x a(g) = a_chart(rho g); left invariance of K and of dg turns
  // the integral into the left-invariant product on R evaluated at rho.
  const StarGrid& g = engine.grid();
  return engine.product(sample_on_orbit(g, orbit, fa), sample_on_orbit(g, orbit, fb));
}

std::complex<double> udf_product_direct(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa,
                                        const DomainFn& fb, int i, int j) {
  const StarGrid& grid = engine.grid();
  const int r = engine.options().upsample;
  const int naf = grid.na * r;
  const double hf = grid.h / r, th = engine.options().theta;
  const ANElement rho{grid.a(i), grid.l(j)}, rinv = an_inverse(rho);
  const GroupElement x = orbit.point(rho);
  // Nodes g = rho^-1 y with y on the refined grid; dg = dy.
  auto node = [&](int iy, int jy) {
    return an_multiply(rinv, {grid.a(0) + iy * hf, grid.l(jy)});
  };
  Eigen::MatrixXd av(naf, grid.nl), bv(naf, grid.nl);
  for (int iy = 0; iy < naf; ++iy)
    for (int jy = 0; jy < grid.nl; ++jy) {
      const ANElement gn = node(iy, jy);
      av(iy, jy) = alpha_x(fa, orbit.action, x, gn);
      bv(iy, jy) = alpha_x(fb, orbit.action, x, gn);
    }
  std::complex<double> acc{};
  const ANElement e{0, 0};
  for (int iy = 0; iy < naf; ++iy)
    for (int jy = 0; jy < grid.nl; ++jy) {
      if (av(iy, jy) == 0.0) continue;
      const ANElement gy = node(iy, jy);
      for (int iz = 0; iz < naf; ++iz)
        for (int jz = 0; jz < grid.nl; ++jz) {
          if (bv(iz, jz) == 0.0) continue;
          acc += kernel_on_group(e, gy, node(iz, jz), th) * av(iy, jy) * bv(iz, jz);
        }
    }
  return acc * hf * hf * grid.h * grid.h;
}

}  // namespace adsdeform

namespace adsdeform {

double covariance_defect(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa, const DomainFn& fb,
                         const DomainMap& move) {
  const StarGrid& g = engine.grid();
  const Eigen::MatrixXcd coeff =
      engine.row_coefficients(sample_on_orbit(g, orbit, fa), sample_on_orbit(g, orbit, fb));
  const Field c = engine.assemble(coeff);
  const DomainFn ma = [&](const GroupElement& x) { return fa(move(x)); };
  const DomainFn mb = [&](const GroupElement& x) { return fb(move(x)); };
  const Field cm = udf_product(engine, orbit, ma, mb);
  const int mid = (g.na - 1) / 2;
  double num = 0;
  int used = 0;
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) {
      const ANElement img = orbit.chart(move(orbit.point({g.a(i), g.l(j)})));
      if (std::abs(img.t) > g.interior || std::abs(img.s) > g.interior) continue;
      const double row = img.t / g.h;
      const long ir = std::lround(row);
      if (std::abs(row - static_cast<double>(ir)) > 1e-8)
        throw std::invalid_argument("covariance_defect: image rows must be grid rows");
      num = std::max(num, std::abs(cm(i, j) - engine.evaluate_row(coeff, mid + static_cast<int>(ir), img.s)));
      ++used;
    }
  if (used == 0) throw std::invalid_argument("covariance_defect: no chart point maps inside the window");
  return num / c.cwiseAbs().maxCoeff();
}

DomainMap raction_map(const BhtzRAction& act, const ANElement& r) {
  const ANElement ri = an_inverse(r);
  return [act, ri](const GroupElement& x) { return act.act(ri, x); };
}

DomainMap commutant_map(const DomainOrbit& orbit, const ANElement& r) {
  return [orbit, r](const GroupElement& x) { return orbit.point(an_multiply(r, orbit.chart(x))); };
}

double sigma_swap_defect(const StarEngine& engine, const BhtzRAction& act, double a, const DomainFn& fa,
                         const DomainFn& fb) {
  if (act.kind != DomainKind::SPINLESS) throw std::invalid_argument("sigma_swap_defect: spinless action only");
  const DomainOrbit o0{act, 0, a}, o1{act, -1, a};
  const DomainFn sa = [&](const GroupElement& x) { return fa(sigma(x)); };
  const DomainFn sb = [&](const GroupElement& x) { return fb(sigma(x)); };
  const Field p = udf_product(engine, o0, sa, sb);
  const Field q = udf_product(engine, o1, fb, fa);
  // sigma(point_0(t, s)) = point_{-1}(t, -s): column j maps to nl - 1 - j.
  return (p - q.rowwise().reverse()).cwiseAbs().maxCoeff() / q.cwiseAbs().maxCoeff();
}

}  // namespace adsdeform
