#pragma once
// Solvable symplectic symmetric space of P(1,1): M = R^2, omega = da ^ dl,
// s_(a,l)(a',l') = (2a - a', 2 l cosh(a - a') - l').

#include <array>
#include <functional>
#include <vector>

namespace adsdeform {

struct SymPoint {
  double a = 0, l = 0;
};

SymPoint operator+(const SymPoint& x, const SymPoint& y);
SymPoint operator-(const SymPoint& x, const SymPoint& y);
SymPoint operator*(double s, const SymPoint& x);
double distance(const SymPoint& x, const SymPoint& y);

SymPoint symmetry(const SymPoint& x, const SymPoint& y);
// d s_x at y, row major [[da/da', da/dl'], [dl/da', dl/dl']].
std::array<double, 4> symmetry_jacobian(const SymPoint& x, const SymPoint& y);

using VectorField = std::function<SymPoint(const SymPoint&)>;

// Generators of the transvection group, read off from derivatives of s_{x0 + eps v} o s_{x0}.
struct TransvectionAlgebra {
  VectorField h;        // boost, d/da
  VectorField e_plus;   // e^a d/dl
  VectorField e_minus;  // e^-a d/dl
};

// Infinitesimal generator d/deps [s_{x0 + eps v} o s_{x0}](p) at eps = 0, by central differences.
SymPoint composition_generator(const SymPoint& x0, const SymPoint& v, const SymPoint& p, double step = 1e-5);
TransvectionAlgebra transvection_generators();
// [X, Y](p) = (X.grad) Y - (Y.grad) X by central differences.
SymPoint lie_bracket(const VectorField& x, const VectorField& y, const SymPoint& p, double step = 1e-4);

// gamma[m][i][j] = Gamma^m_ij with index 0 = a, 1 = l.
struct Christoffels {
  double gamma[2][2][2] = {};
};

// Finite-difference evaluation of omega(nabla_X Y, Z) = 1/2 X.omega(Y + s_x* Y, Z) on coordinate fields.
Christoffels christoffels(const SymPoint& x, double step = 1e-4);
// Closed form of the same connection: only Gamma^l_aa = -l.
Christoffels christoffels_model(const SymPoint& x);

struct GeodesicArc {
  SymPoint p, q;
  std::vector<SymPoint> points;  // t = k / steps
  SymPoint initial_velocity;
  int steps = 0;
  int newton_iterations = 0;
  double endpoint_residual = 0;
};

// Shooting with RK4 on the geodesic equation and Newton on the initial velocity.
// Throws std::runtime_error if the shooting does not converge.
GeodesicArc geodesic(const SymPoint& p, const SymPoint& q, int steps = 200);
// Closed-form solution of the same boundary-value problem at parameter t in [0, 1].
SymPoint geodesic_point(const SymPoint& p, const SymPoint& q, double t);
SymPoint geodesic_velocity(const SymPoint& p, const SymPoint& q, double t);

// t with s_x s_y s_z t = t, closed form.
SymPoint fourth_point(const SymPoint& x, const SymPoint& y, const SymPoint& z);
SymPoint fourth_point_newton(const SymPoint& x, const SymPoint& y, const SymPoint& z);

// Oriented symplectic area of the geodesic triangle, counterclockwise positive.
double triangle_area(const SymPoint& p, const SymPoint& q, const SymPoint& r);  // Stokes, loop integral of a dl
double triangle_area_interior(const SymPoint& p, const SymPoint& q, const SymPoint& r);  // 2-D quadrature

// Vertices (t, s_z t, s_y s_z t) of the triangle with midpoints z, y, x.
std::array<SymPoint, 3> midpoint_triangle(const SymPoint& x, const SymPoint& y, const SymPoint& z);

double phase_S(const SymPoint& x, const SymPoint& y, const SymPoint& z);         // geometric
double phase_S_closed(const SymPoint& x, const SymPoint& y, const SymPoint& z);  // kernel formula
// |det d(vertices)/d(midpoints)|^(1/2) = 4 sqrt(cosh(ax-ay) cosh(ay-az) cosh(az-ax)).
double amplitude_A(const SymPoint& x, const SymPoint& y, const SymPoint& z);
double amplitude_jacobian_fd(const SymPoint& x, const SymPoint& y, const SymPoint& z, double step = 1e-5);

struct AreaRatio {
  double value = 0;
  bool degenerate = false;  // both areas below 1e-12, limit value used
};
// Literal ratio (area(vertex triangle) / area(midpoint triangle))^(1/2), reported as a diagnostic.
AreaRatio amplitude_area_ratio(const SymPoint& x, const SymPoint& y, const SymPoint& z);

}  // namespace adsdeform
