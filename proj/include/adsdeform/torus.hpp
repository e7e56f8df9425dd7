#pragma once
// Rieffel deformation of trigonometric polynomials on the d-torus (quantum torus).

#include <complex>
#include <map>
#include <vector>

namespace adsdeform {

using Mode = std::vector<long>;
using cplx = std::complex<double>;

struct TrigPolynomial {
  std::map<Mode, cplx> coeffs;

  static TrigPolynomial mode(const Mode& m, cplx c = 1.0);
  cplx operator[](const Mode& m) const;
  TrigPolynomial conj() const;  // pointwise complex conjugate
  double max_abs() const;
};

TrigPolynomial operator+(const TrigPolynomial& x, const TrigPolynomial& y);
TrigPolynomial operator-(const TrigPolynomial& x, const TrigPolynomial& y);
TrigPolynomial operator*(cplx s, const TrigPolynomial& x);

// Antisymmetric real matrix; the constructor throws unless J^T = -J exactly.
class DeformationMatrix {
 public:
  explicit DeformationMatrix(std::vector<std::vector<double>> j);
  static DeformationMatrix standard2();  // [[0,1],[-1,0]]
  std::size_t dim() const { return j_.size(); }
  double pairing(const Mode& m, const Mode& n) const;  // m . J n
  const std::vector<std::vector<double>>& rows() const { return j_; }

 private:
  std::vector<std::vector<double>> j_;
};

// Convention constant of the plane-wave phase exp(i kappa theta m.Jn).
constexpr double kTorusKappa = 1.0;

struct ModeProduct {
  cplx phase;
  Mode mode;
};

ModeProduct mode_product(const Mode& m, const Mode& n, double theta, const DeformationMatrix& J);
TrigPolynomial star_theta(const TrigPolynomial& a, const TrigPolynomial& b, double theta, const DeformationMatrix& J);
// Commutative product (theta = 0).
TrigPolynomial pointwise(const TrigPolynomial& a, const TrigPolynomial& b);
// Exact mode bracket {e_m, e_n} = -(m.Jn) e_{m+n}.
TrigPolynomial poisson_modes(const TrigPolynomial& a, const TrigPolynomial& b, const DeformationMatrix& J);
// Evaluate at a point of R^d.
cplx evaluate(const TrigPolynomial& a, const std::vector<double>& x);
// tau(a) = mode-0 coefficient.
cplx trace(const TrigPolynomial& a);

struct FirstOrderResult {
  std::vector<double> thetas;
  std::vector<cplx> ratios;  // per-theta leading-term ratio against {a,b}
  cplx ratio;                // extrapolated to theta -> 0
  bool central = false;      // {a,b} vanishes identically
};

// Commutator [a,b]_theta / (theta {a,b}) with the theta^2 and theta^4 corrections removed by
// Richardson steps at theta/2, theta/4, then extrapolated over the theta list.
FirstOrderResult first_order_check(const TrigPolynomial& a, const TrigPolynomial& b, const DeformationMatrix& J,
                                   const std::vector<double>& thetas = {1e-1, 1e-2, 1e-3, 1e-4});

}  // namespace adsdeform
