#include "adsdeform/torus.hpp"

#include <cmath>
#include <stdexcept>

namespace adsdeform {

TrigPolynomial TrigPolynomial::mode(const Mode& m, cplx c) {
  TrigPolynomial p;
  p.coeffs[m] = c;
  return p;
}

cplx TrigPolynomial::operator[](const Mode& m) const {
  const auto it = coeffs.find(m);
  return it == coeffs.end() ? cplx{} : it->second;
}

TrigPolynomial TrigPolynomial::conj() const {
  TrigPolynomial out;
  for (const auto& [m, c] : coeffs) {
    Mode neg(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
    out.coeffs[neg] = std::conj(c);
  }
  return out;
}

double TrigPolynomial::max_abs() const {
  double out = 0;
  for (const auto& kv : coeffs) out = std::max(out, std::abs(kv.second));
  return out;
}

TrigPolynomial operator+(const TrigPolynomial& x, const TrigPolynomial& y) {
  TrigPolynomial out = x;
  for (const auto& [m, c] : y.coeffs) out.coeffs[m] += c;
  return out;
}

TrigPolynomial operator-(const TrigPolynomial& x, const TrigPolynomial& y) { return x + cplx(-1) * y; }

TrigPolynomial operator*(cplx s, const TrigPolynomial& x) {
  TrigPolynomial out = x;
  for (auto& kv : out.coeffs) kv.second *= s;
  return out;
}

DeformationMatrix::DeformationMatrix(std::vector<std::vector<double>> j) : j_(std::move(j)) {
  for (std::size_t r = 0; r < j_.size(); ++r) {
    if (j_[r].size() != j_.size()) throw std::invalid_argument("DeformationMatrix: not square");
    for (std::size_t c = 0; c < j_.size(); ++c)
      if (j_[r][c] != -j_[c][r]) throw std::invalid_argument("DeformationMatrix: not antisymmetric");
  }
}

DeformationMatrix DeformationMatrix::standard2() { return DeformationMatrix({{0, 1}, {-1, 0}}); }

double DeformationMatrix::pairing(const Mode& m, const Mode& n) const {
  if (m.size() != dim() || n.size() != dim()) throw std::invalid_argument("mode dimension mismatch");
  double out = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = 0; k < dim(); ++k) out += static_cast<double>(m[i]) * j_[i][k] * static_cast<double>(n[k]);
  return out;
}

ModeProduct mode_product(const Mode& m, const Mode& n, double theta, const DeformationMatrix& J) {
  Mode sum(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) sum[i] = m[i] + n[i];
  return {std::polar(1.0, kTorusKappa * theta * J.pairing(m, n)), sum};
}

TrigPolynomial star_theta(const TrigPolynomial& a, const TrigPolynomial& b, double theta, const DeformationMatrix& J) {
  TrigPolynomial out;
  for (const auto& [m, ca] : a.coeffs)
    for (const auto& [n, cb] : b.coeffs) {
      const ModeProduct p = mode_product(m, n, theta, J);
      out.coeffs[p.mode] += p.phase * ca * cb;
    }
  return out;
}

TrigPolynomial pointwise(const TrigPolynomial& a, const TrigPolynomial& b) {
  TrigPolynomial out;
  for (const auto& [m, ca] : a.coeffs)
    for (const auto& [n, cb] : b.coeffs) {
      Mode sum(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) sum[i] = m[i] + n[i];
      out.coeffs[sum] += ca * cb;
    }
  return out;
}

TrigPolynomial poisson_modes(const TrigPolynomial& a, const TrigPolynomial& b, const DeformationMatrix& J) {
  TrigPolynomial out;
  for (const auto& [m, ca] : a.coeffs)
    for (const auto& [n, cb] : b.coeffs) {
      Mode sum(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) sum[i] = m[i] + n[i];
      out.coeffs[sum] += -J.pairing(m, n) * ca * cb;
    }
  return out;
}

cplx evaluate(const TrigPolynomial& a, const std::vector<double>& x) {
  cplx out{};
  for (const auto& [m, c] : a.coeffs) {
    double ph = 0;
    for (std::size_t i = 0; i < m.size(); ++i) ph += static_cast<double>(m[i]) * x[i];
    out += c * std::polar(1.0, ph);
  }
  return out;
}

cplx trace(const TrigPolynomial& a) {
  for (const auto& [m, c] : a.coeffs) {
    bool zero = true;
    for (long k : m) zero = zero && k == 0;
    if (zero) return c;
  }
  return {};
}

namespace {

cplx projected_ratio(const TrigPolynomial& comm, const TrigPolynomial& pb, double theta) {
  cplx num{};
  double den = 0;
  for (const auto& [m, c] : pb.coeffs) {
    num += std::conj(c) * comm[m];
    den += std::norm(c);
  }
  return num / (den * theta);
}

// Neville extrapolation to x = 0 of samples y(x_i).
cplx neville_zero(std::vector<double> x, std::vector<cplx> y) {
  const std::size_t n = x.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i) y[i] = (x[i + k] * y[i] - x[i] * y[i + 1]) / (x[i + k] - x[i]);
  return y[0];
}

}  // namespace

FirstOrderResult first_order_check(const TrigPolynomial& a, const TrigPolynomial& b, const DeformationMatrix& J,
                                   const std::vector<double>& thetas) {
  FirstOrderResult out;
  out.thetas = thetas;
  const TrigPolynomial pb = poisson_modes(a, b, J);
  out.central = pb.max_abs() == 0;
  if (out.central) {
    out.ratios.assign(thetas.size(), 0.0);
    return out;
  }
  auto raw = [&](double th) {
    return projected_ratio(star_theta(a, b, th, J) - star_theta(b, a, th, J), pb, th);
  };
  std::vector<double> sq;
  for (double th : thetas) {
    // Commutator / theta is even in theta: remove theta^2 and theta^4 terms.
    const double hs[3] = {th, th / 2, th / 4};
    std::vector<double> xs;
    std::vector<cplx> ys;
    for (double h : hs) {
      xs.push_back(h * h);
      ys.push_back(raw(h));
    }
    out.ratios.push_back(neville_zero(xs, ys));
    sq.push_back(th * th);
  }
  out.ratio = neville_zero(sq, out.ratios);
  return out;
}

}  // namespace adsdeform
