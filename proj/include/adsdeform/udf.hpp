#pragma once
// Transport of the symmetric-space kernel to R = AN and the universal deformation formula on BHTZ domains.

#include <complex>
#include <functional>

#include "adsdeform/bhtz.hpp"
#include "adsdeform/star.hpp"

namespace adsdeform {

// R acts on M by the boost flow and the translation flow it normalizes with weight -1:
// tau_(t,s)(a, l) = (a + t, l + s e^{-a}).
SymPoint r_action(const ANElement& r, const SymPoint& p);

struct OrbitIdentification {
  SymPoint base;
  SymPoint point(const ANElement& r) const;    // tau_r(base)
  ANElement element(const SymPoint& p) const;  // inverse
};

// c0/theta^2 A e^{iS/theta} at tau_gi(base).
std::complex<double> kernel_on_group(const ANElement& g1, const ANElement& g2, const ANElement& g3, double theta,
                                     const OrbitIdentification& id = {});
// |det d(L_r)| at g in (t, s) coordinates; 1 for the left Haar density dt ds.
double left_translation_jacobian(const ANElement& r, const ANElement& g);

enum class DomainKind { SPINLESS, ROTATING };

struct BhtzRAction {
  DomainKind kind = DomainKind::SPINLESS;
  KillingPair xi;
  double alpha = 0;   // rotating only
  double c_left = 0;  // z_action(n) is the action of exp(n c_left H)

  GroupElement act(const ANElement& r, const GroupElement& x) const;
  ANElement z_element(long n) const;
};

BhtzRAction bhtz_raction(DomainKind kind, double mass, double spin);

// One R-orbit with chart x = act(rho^-1, p): spinless orbits are (sheet, transversal a),
// rotating orbits are the modified-Iwasawa fibers through k(kappa).
struct DomainOrbit {
  BhtzRAction action;
  long sheet = 0;
  double a = 0;
  double kappa = 0;

  GroupElement base() const;
  GroupElement point(const ANElement& rho) const;
  ANElement chart(const GroupElement& x) const;
};

using DomainFn = std::function<double(const GroupElement&)>;

// alpha^x a(g) = a(tau_{g^-1} x).
double alpha_x(const DomainFn& f, const BhtzRAction& act, const GroupElement& x, const ANElement& g);

// Samples of f on the chart grid rho = (t_i, s_j) of an orbit.
Field sample_on_orbit(const StarGrid& g, const DomainOrbit& orbit, const DomainFn& f);

// (a * b)(x) = int K(e,g,h) alpha^x a(g) alpha^x b(h) dg dh, evaluated on the chart grid of one orbit.
Field udf_product(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa, const DomainFn& fb);
// The same integral evaluated pointwise by dense quadrature over R (oracle).
std::complex<double> udf_product_direct(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa,
                                        const DomainFn& fb, int i, int j);

// Covariance defect max|g.a * g.b - g.(a * b)| / max|a * b| over chart points whose image stays inside
// [-2, 2]^2. The group element acts on functions through x -> x' and on the chart by rho -> chart(x').
// Image rows must be grid rows; along s the product is evaluated in closed form.
using DomainMap = std::function<GroupElement(const GroupElement&)>;
double covariance_defect(const StarEngine& engine, const DomainOrbit& orbit, const DomainFn& fa, const DomainFn& fb,
                         const DomainMap& move);
// x -> act(r^-1, x), the R-action itself.
DomainMap raction_map(const BhtzRAction& act, const ANElement& r);
// x -> point(r chart(x)): the right action of R on the orbit, which commutes with act.
DomainMap commutant_map(const DomainOrbit& orbit, const ANElement& r);

// sigma maps the spinless sheet 2m onto sheet -2m-1 and acts on R by (t, s) -> (t, -s), which reverses
// the symplectic form; it intertwines a * b on one orbit with b * a on the other.
// Returns max|sigma*(b * a) - sigma*a * sigma*b| / max|a * b| with the products on sheets 0 and -1.
double sigma_swap_defect(const StarEngine& engine, const BhtzRAction& act, double a, const DomainFn& fa,
                         const DomainFn& fb);

}  // namespace adsdeform
