#include "adsdeform/torus.hpp"

#include <limits>
#include <random>

#include "doctest.h"

using namespace adsdeform;

namespace {

constexpr double kUlp = 8 * std::numeric_limits<double>::epsilon();

Mode random_mode(std::mt19937_64& rng, int d = 2, long r = 6) {
  std::uniform_int_distribution<long> u(-r, r);
  Mode m(d);
  for (auto& k : m) k = u(rng);
  return m;
}

TrigPolynomial random_poly(std::mt19937_64& rng, int terms, long r) {
  std::normal_distribution<double> g;
  TrigPolynomial p;
  for (int i = 0; i < terms; ++i) p.coeffs[random_mode(rng, 2, r)] += cplx(g(rng), g(rng));
  return p;
}

double diff(const TrigPolynomial& a, const TrigPolynomial& b) { return (a - b).max_abs(); }

// Delta-function evaluation of the plane-wave integral:
// (2pi)^-d int int e^{i x.y} e^{i m.x} e^{i theta n.(J y)} dx dy = e^{i theta n.(J(-m))}.
cplx oracle_phase(const Mode& m, const Mode& n, double theta, const DeformationMatrix& J) {
  Mode neg(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
  return std::polar(1.0, theta * J.pairing(n, neg));
}

}  // namespace

TEST_CASE("deformation matrix") {
  CHECK_THROWS_AS(DeformationMatrix({{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(DeformationMatrix({{0, 1}}), std::invalid_argument);
  const DeformationMatrix J = DeformationMatrix::standard2();
  CHECK(J.pairing({1, 0}, {0, 1}) == 1);
  CHECK(J.pairing({0, 1}, {1, 0}) == -1);
}

TEST_CASE("mode product and pinned convention constant") {
  const DeformationMatrix J = DeformationMatrix::standard2();
  std::mt19937_64 rng(41);
  CHECK(kTorusKappa == 1.0);
  for (int i = 0; i < 200; ++i) {
    const Mode m = random_mode(rng), n = random_mode(rng);
    const double th = 0.37;
    const ModeProduct p = mode_product(m, n, th, J);
    CHECK(std::abs(p.phase - oracle_phase(m, n, th, J)) < kUlp);
    CHECK(std::abs(std::abs(p.phase) - 1) < kUlp);
    CHECK(mode_product(m, n, 0, J).phase == cplx(1, 0));
    CHECK(mode_product({0, 0}, n, th, J).phase == cplx(1, 0));
    CHECK(mode_product(n, {0, 0}, th, J).phase == cplx(1, 0));
  }
  // Quantum torus relation u * v = e^{2 i kappa theta} v * u.
  const TrigPolynomial u = TrigPolynomial::mode({1, 0}), v = TrigPolynomial::mode({0, 1});
  for (double th : {0.1, 0.7, 2.5}) {
    const TrigPolynomial uv = star_theta(u, v, th, J), vu = star_theta(v, u, th, J);
    CHECK(diff(uv, std::polar(1.0, 2 * kTorusKappa * th) * vu) < kUlp);
  }
  const TrigPolynomial a = TrigPolynomial::mode({2, -1}, {0.5, 1}), b = TrigPolynomial::mode({1, 3}, 2.0);
  CHECK(diff(star_theta(a, b, 0, J), pointwise(a, b)) == 0);
}

TEST_CASE("exact algebra on random mode triples") {
  const DeformationMatrix J = DeformationMatrix::standard2();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ut(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    const Mode m = random_mode(rng), n = random_mode(rng), p = random_mode(rng);
    const double th = ut(rng);
    // Integer symplectic exponents agree exactly.
    Mode mn(2), np(2);
    for (int k = 0; k < 2; ++k) {
      mn[k] = m[k] + n[k];
      np[k] = n[k] + p[k];
    }
    CHECK(J.pairing(m, n) + J.pairing(mn, p) == J.pairing(n, p) + J.pairing(m, np));
    const TrigPolynomial em = TrigPolynomial::mode(m), en = TrigPolynomial::mode(n), ep = TrigPolynomial::mode(p);
    // Phases are rounded from arguments of size |theta m.Jn|: machine precision is relative to that.
    const double arg = std::abs(th) * (std::abs(J.pairing(m, n)) + std::abs(J.pairing(mn, p)) +
                                       std::abs(J.pairing(n, p)) + std::abs(J.pairing(m, np)));
    CHECK(diff(star_theta(star_theta(em, en, th, J), ep, th, J), star_theta(em, star_theta(en, ep, th, J), th, J)) <
          kUlp * (1 + arg));
    const TrigPolynomial one = TrigPolynomial::mode({0, 0});
    CHECK(diff(star_theta(em, one, th, J), em) == 0);
    CHECK(diff(star_theta(one, em, th, J), em) == 0);
    // (a * b)* = b* * a*
    CHECK(diff(star_theta(em, en, th, J).conj(), star_theta(en.conj(), em.conj(), th, J)) < kUlp);
    // tau(a * b) = tau(b * a) = tau(ab)
    CHECK(std::abs(trace(star_theta(em, en, th, J)) - trace(star_theta(en, em, th, J))) < kUlp);
    CHECK(std::abs(trace(star_theta(em, en, th, J)) - trace(pointwise(em, en))) < kUlp);
  }
  // Same on random polynomials.
  for (int i = 0; i < 20; ++i) {
    const TrigPolynomial a = random_poly(rng, 6, 3), b = random_poly(rng, 6, 3), c = random_poly(rng, 6, 3);
    const double th = ut(rng);
    const double scale = a.max_abs() * b.max_abs() * c.max_abs() * 36 * 36;
    CHECK(diff(star_theta(star_theta(a, b, th, J), c, th, J), star_theta(a, star_theta(b, c, th, J), th, J)) <
          kUlp * scale * (1 + 4 * 72 * std::abs(th)));
    CHECK(std::abs(trace(star_theta(a, b, th, J)) - trace(star_theta(b, a, th, J))) < kUlp * scale);
  }
}

TEST_CASE("support and smooth dependence on theta") {
  const DeformationMatrix J = DeformationMatrix::standard2();
  std::mt19937_64 rng(43);
  const TrigPolynomial a = random_poly(rng, 5, 2), b = random_poly(rng, 5, 2);
  const TrigPolynomial ab = star_theta(a, b, 0.8, J);
  for (const auto& kv : ab.coeffs) {
    bool found = false;
    for (const auto& x : a.coeffs)
      for (const auto& y : b.coeffs) found = found || (x.first[0] + y.first[0] == kv.first[0] && x.first[1] + y.first[1] == kv.first[1]);
    CHECK(found);
  }
  // d/dtheta of each coefficient by differences vs the closed form i m.Jn phase.
  const double th = 0.8, h = 1e-5;
  const TrigPolynomial d = cplx(1 / (2 * h)) * (star_theta(a, b, th + h, J) - star_theta(a, b, th - h, J));
  TrigPolynomial exact;
  for (const auto& [m, ca] : a.coeffs)
    for (const auto& [n, cb] : b.coeffs) {
      const ModeProduct p = mode_product(m, n, th, J);
      exact.coeffs[p.mode] += cplx(0, kTorusKappa * J.pairing(m, n)) * p.phase * ca * cb;
    }
  CHECK(diff(d, exact) < 1e-6 * (1 + exact.max_abs()));
}

TEST_CASE("Poisson bracket on modes") {
  const DeformationMatrix J = DeformationMatrix::standard2();
  std::mt19937_64 rng(44);
  for (int i = 0; i < 50; ++i) {
    const TrigPolynomial a = random_poly(rng, 4, 3), b = random_poly(rng, 4, 3), c = random_poly(rng, 4, 3);
    CHECK(diff(poisson_modes(a, b, J), cplx(-1) * poisson_modes(b, a, J)) < 1e-12);
    const TrigPolynomial jac = poisson_modes(poisson_modes(a, b, J), c, J) + poisson_modes(poisson_modes(b, c, J), a, J) +
                               poisson_modes(poisson_modes(c, a, J), b, J);
    CHECK(jac.max_abs() < 1e-9);
    CHECK(poisson_modes(a, a, J).max_abs() < 1e-12);
  }
  // Pointwise evaluation agrees with J^{ij} d_i a d_j b.
  const TrigPolynomial a = random_poly(rng, 4, 2), b = random_poly(rng, 4, 2);
  const std::vector<double> x = {0.3, -1.1};
  const double h = 1e-5;
  auto d = [&](const TrigPolynomial& p, int i) {
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    return (evaluate(p, xp) - evaluate(p, xm)) / (2 * h);
  };
  const cplx expect = d(a, 0) * d(b, 1) - d(a, 1) * d(b, 0);
  CHECK(std::abs(evaluate(poisson_modes(a, b, J), x) - expect) < 1e-6 * (1 + std::abs(expect)));
}

TEST_CASE("first-order ratio") {
  const DeformationMatrix J = DeformationMatrix::standard2();
  const TrigPolynomial a = TrigPolynomial::mode({1, 1}) + TrigPolynomial::mode({-1, 0}, 0.5);
  CHECK(first_order_check(a, a, J).central);
  CHECK(first_order_check(TrigPolynomial::mode({1, 2}), TrigPolynomial::mode({2, 4}), J).central);
  for (double th : {0.1, 1.0}) {
    const TrigPolynomial c = star_theta(TrigPolynomial::mode({1, 2}), TrigPolynomial::mode({2, 4}), th, J) -
                             star_theta(TrigPolynomial::mode({2, 4}), TrigPolynomial::mode({1, 2}), th, J);
    CHECK(c.max_abs() == 0);
  }
  std::mt19937_64 rng(45);
  for (int i = 0; i < 10; ++i) {
    const TrigPolynomial x = random_poly(rng, 4, 1), y = random_poly(rng, 4, 1);
    const FirstOrderResult r = first_order_check(x, y, J);
    REQUIRE(!r.central);
    // [a, b] = 2 i sin(kappa theta m.Jn): ratio against {a, b} = -(m.Jn) is -2 i kappa.
    CHECK(std::abs(r.ratio - cplx(0, -2 * kTorusKappa)) < 1e-6);
    for (const cplx& q : r.ratios) CHECK(std::abs(q - r.ratio) < 1e-6);
  }
}
