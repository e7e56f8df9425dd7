#include "adsdeform/symsym.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace adsdeform {

SymPoint operator+(const SymPoint& x, const SymPoint& y) { return {x.a + y.a, x.l + y.l}; }
SymPoint operator-(const SymPoint& x, const SymPoint& y) { return {x.a - y.a, x.l - y.l}; }
SymPoint operator*(double s, const SymPoint& x) { return {s * x.a, s * x.l}; }
double distance(const SymPoint& x, const SymPoint& y) { return std::hypot(x.a - y.a, x.l - y.l); }

SymPoint symmetry(const SymPoint& x, const SymPoint& y) {
  return {2 * x.a - y.a, 2 * x.l * std::cosh(x.a - y.a) - y.l};
}

std::array<double, 4> symmetry_jacobian(const SymPoint& x, const SymPoint& y) {
  return {-1, 0, -2 * x.l * std::sinh(x.a - y.a), -1};
}

SymPoint composition_generator(const SymPoint& x0, const SymPoint& v, const SymPoint& p, double step) {
  const SymPoint base = symmetry(x0, p);
  const SymPoint plus = symmetry(x0 + step * v, base);
  const SymPoint minus = symmetry(x0 - step * v, base);
  return (1 / (2 * step)) * (plus - minus);
}

TransvectionAlgebra transvection_generators() {
  const SymPoint origin{}, shifted{1, 0};
  VectorField h = [=](const SymPoint& p) { return 0.5 * composition_generator(origin, {1, 0}, p); };
  // cosh(a) d/dl from x0 = 0, cosh(a - 1) d/dl from x0 = (1, 0); sinh(a) d/dl is their combination.
  auto c = [=](const SymPoint& p) { return 0.5 * composition_generator(origin, {0, 1}, p); };
  auto c1 = [=](const SymPoint& p) { return 0.5 * composition_generator(shifted, {0, 1}, p); };
  auto s = [=](const SymPoint& p) {
    return (1 / std::sinh(1.0)) * (std::cosh(1.0) * c(p) - c1(p));
  };
  VectorField ep = [=](const SymPoint& p) { return c(p) + s(p); };
  VectorField em = [=](const SymPoint& p) { return c(p) - s(p); };
  return {h, ep, em};
}

SymPoint lie_bracket(const VectorField& x, const VectorField& y, const SymPoint& p, double step) {
  auto directional = [&](const VectorField& field, const SymPoint& dir) {
    return (1 / (2 * step)) * (field(p + step * dir) - field(p - step * dir));
  };
  return directional(y, x(p)) - directional(x, y(p));
}

Christoffels christoffels(const SymPoint& x, double step) {
  // omega is constant, so Gamma^m_ij = 1/2 d_i [(s_x* d_j)^m](x).
  auto pushed = [&](int j, const SymPoint& p) {
    const auto jac = symmetry_jacobian(x, symmetry(x, p));
    return j == 0 ? SymPoint{jac[0], jac[2]} : SymPoint{jac[1], jac[3]};
  };
  Christoffels out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const SymPoint dir = i == 0 ? SymPoint{1, 0} : SymPoint{0, 1};
      auto central = [&](double h) { return (1 / (2 * h)) * (pushed(j, x + h * dir) - pushed(j, x - h * dir)); };
      const SymPoint d = (4.0 / 3) * central(step / 2) - (1.0 / 3) * central(step);
      out.gamma[0][i][j] = 0.5 * d.a;
      out.gamma[1][i][j] = 0.5 * d.l;
    }
  return out;
}

Christoffels christoffels_model(const SymPoint& x) {
  Christoffels out;
  out.gamma[1][0][0] = -x.l;
  return out;
}

namespace {

using State = Eigen::Vector4d;  // a, l, a', l'

State geodesic_rhs(const State& y) {
  const Christoffels g = christoffels_model({y(0), y(1)});
  State d;
  d(0) = y(2);
  d(1) = y(3);
  for (int m = 0; m < 2; ++m) {
    double acc = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) acc += g.gamma[m][i][j] * y(2 + i) * y(2 + j);
    d(2 + m) = -acc;
  }
  return d;
}

std::vector<SymPoint> integrate(const SymPoint& p, const SymPoint& v, int steps) {
  State y(p.a, p.l, v.a, v.l);
  const double h = 1.0 / steps;
  std::vector<SymPoint> out{p};
  for (int k = 0; k < steps; ++k) {
    const State k1 = geodesic_rhs(y);
    const State k2 = geodesic_rhs(y + 0.5 * h * k1);
    const State k3 = geodesic_rhs(y + 0.5 * h * k2);
    const State k4 = geodesic_rhs(y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    out.push_back({y(0), y(1)});
  }
  return out;
}

}  // namespace

GeodesicArc geodesic(const SymPoint& p, const SymPoint& q, int steps) {
  GeodesicArc arc;
  arc.p = p;
  arc.q = q;
  arc.steps = steps;
  SymPoint v = q - p;
  const double tol = 1e-12 * (1 + std::abs(q.a) + std::abs(q.l));
  for (int it = 0; it < 50; ++it) {
    arc.points = integrate(p, v, steps);
    const SymPoint r = arc.points.back() - q;
    arc.endpoint_residual = std::hypot(r.a, r.l);
    arc.newton_iterations = it;
    if (arc.endpoint_residual < tol) break;
    Eigen::Matrix2d jac;
    const double h = 1e-6 * (1 + std::hypot(v.a, v.l));
    for (int c = 0; c < 2; ++c) {
      SymPoint dv = c == 0 ? SymPoint{h, 0} : SymPoint{0, h};
      const SymPoint e1 = integrate(p, v + dv, steps).back(), e0 = integrate(p, v - dv, steps).back();
      jac(0, c) = (e1.a - e0.a) / (2 * h);
      jac(1, c) = (e1.l - e0.l) / (2 * h);
    }
    const Eigen::Vector2d step = jac.partialPivLu().solve(Eigen::Vector2d(r.a, r.l));
    v = v - SymPoint{step(0), step(1)};
  }
  if (arc.endpoint_residual > 1e-9 * (1 + std::abs(q.a) + std::abs(q.l)))
    throw std::runtime_error("geodesic: shooting did not converge");
  arc.initial_velocity = v;
  return arc;
}

namespace {

// sinh(d t) / sinh(d), continuous at d = 0.
double sinh_ratio(double d, double t) {
  if (std::abs(d) < 1e-6) return t * (1 + d * d * (t * t - 1) / 6);
  return std::sinh(d * t) / std::sinh(d);
}

double sinh_ratio_dt(double d, double t) {
  if (std::abs(d) < 1e-6) return 1 + d * d * (3 * t * t - 1) / 6;
  return d * std::cosh(d * t) / std::sinh(d);
}

}  // namespace

SymPoint geodesic_point(const SymPoint& p, const SymPoint& q, double t) {
  const double d = q.a - p.a;
  return {p.a + d * t, p.l * sinh_ratio(d, 1 - t) + q.l * sinh_ratio(d, t)};
}

SymPoint geodesic_velocity(const SymPoint& p, const SymPoint& q, double t) {
  const double d = q.a - p.a;
  return {d, -p.l * sinh_ratio_dt(d, 1 - t) + q.l * sinh_ratio_dt(d, t)};
}

SymPoint fourth_point(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  // The composite is (a, l) -> (2ax - 2ay + 2az - a, c(a) - l): fixed point l = c(a_t) / 2.
  const double at = x.a - y.a + z.a;
  const SymPoint img = symmetry(x, symmetry(y, symmetry(z, {at, 0})));
  return {at, 0.5 * img.l};
}

SymPoint fourth_point_newton(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  auto resid = [&](const SymPoint& t) { return symmetry(x, symmetry(y, symmetry(z, t))) - t; };
  SymPoint t{(x.a + y.a + z.a) / 3, (x.l + y.l + z.l) / 3};
  for (int it = 0; it < 100; ++it) {
    const SymPoint r = resid(t);
    if (std::hypot(r.a, r.l) < 1e-14 * (1 + std::abs(t.l))) break;
    Eigen::Matrix2d jac;
    const double h = 1e-6;
    for (int c = 0; c < 2; ++c) {
      const SymPoint dv = c == 0 ? SymPoint{h, 0} : SymPoint{0, h};
      const SymPoint d = (1 / (2 * h)) * (resid(t + dv) - resid(t - dv));
      jac(0, c) = d.a;
      jac(1, c) = d.l;
    }
    const Eigen::Vector2d s = jac.partialPivLu().solve(Eigen::Vector2d(r.a, r.l));
    t = t - SymPoint{s(0), s(1)};
  }
  return t;
}

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

// Composite Gauss-Legendre on [0, 1] with the given number of panels.
template <class F>
double integrate01(F&& f, int panels) {
  double out = 0;
  const double w = 1.0 / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * w;
    out += Gauss::integrate([&](double u) { return f(mid + 0.5 * w * u); }, -1.0, 1.0) * 0.5 * w;
  }
  return out;
}

double edge_integral(const SymPoint& p, const SymPoint& q) {
  return integrate01([&](double t) { return geodesic_point(p, q, t).a * geodesic_velocity(p, q, t).l; }, 8);
}

}  // namespace

double triangle_area(const SymPoint& p, const SymPoint& q, const SymPoint& r) {
  return edge_integral(p, q) + edge_integral(q, r) + edge_integral(r, p);
}

double triangle_area_interior(const SymPoint& p, const SymPoint& q, const SymPoint& r) {
  // F(u, v) = geodesic from p to the point at v on the side q -> r, taken at parameter u.
  auto jac_det = [&](double u, double v) {
    const SymPoint m = geodesic_point(q, r, v);
    const SymPoint dm = geodesic_velocity(q, r, v);
    const SymPoint fu = geodesic_velocity(p, m, u);
    const double h = 1e-5;
    auto at = [&](double dv) { return geodesic_point(p, m + dv * dm, u); };
    const SymPoint fv = (1 / (2 * h)) * (at(h) - at(-h));
    return fu.a * fv.l - fu.l * fv.a;
  };
  return integrate01([&](double u) { return integrate01([&](double v) { return jac_det(u, v); }, 4); }, 4);
}

std::array<SymPoint, 3> midpoint_triangle(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  const SymPoint t = fourth_point(x, y, z);
  const SymPoint szt = symmetry(z, t);
  return {t, szt, symmetry(y, szt)};
}

double phase_S(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  const auto v = midpoint_triangle(x, y, z);
  return triangle_area(v[0], v[1], v[2]);
}

double phase_S_closed(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  return 2 * (std::sinh(x.a - y.a) * z.l + std::sinh(y.a - z.a) * x.l + std::sinh(z.a - x.a) * y.l);
}

double amplitude_A(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  return 4 * std::sqrt(std::cosh(x.a - y.a) * std::cosh(y.a - z.a) * std::cosh(z.a - x.a));
}

double amplitude_jacobian_fd(const SymPoint& x, const SymPoint& y, const SymPoint& z, double step) {
  Eigen::Matrix<double, 6, 6> jac;
  const std::array<SymPoint, 3> base{x, y, z};
  for (int c = 0; c < 6; ++c) {
    auto at = [&](double h) {
      std::array<SymPoint, 3> m = base;
      (c % 2 == 0 ? m[c / 2].a : m[c / 2].l) += h;
      const auto v = midpoint_triangle(m[0], m[1], m[2]);
      Eigen::Matrix<double, 6, 1> out;
      for (int k = 0; k < 3; ++k) out.segment<2>(2 * k) << v[k].a, v[k].l;
      return out;
    };
    jac.col(c) = (at(step) - at(-step)) / (2 * step);
  }
  return std::sqrt(std::abs(jac.determinant()));
}

AreaRatio amplitude_area_ratio(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  const auto v = midpoint_triangle(x, y, z);
  const double big = std::abs(triangle_area(v[0], v[1], v[2]));
  const double small = std::abs(triangle_area(x, y, z));
  if (big < 1e-12 && small < 1e-12) {
    // Limit along (x, x + eps u, x + eps w): the vertex triangle is four times the midpoint one.
    return {2.0, true};
  }
  return {std::sqrt(big / small), false};
}

}  // namespace adsdeform
