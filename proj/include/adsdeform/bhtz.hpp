#pragma once
// BHTZ quotient data, twisted and modified Iwasawa charts, causal structure.

#include <string>

#include "adsdeform/lie.hpp"

namespace adsdeform {

struct KillingPair {
  AlgebraVector xl, xr;
};

struct MassMomentum {
  double mass = 0, spin = 0;
  bool generic = false;
};

MassMomentum mass_momentum(const KillingPair& xi);

// xl = sqrt((M+J)/2) H, xr = -sqrt((M-J)/2) H. Requires M > |J|.
KillingPair pair_from_mass_spin(double mass, double spin);
bool is_spinless(const KillingPair& xi, double tol = 1e-12);

// n.x = exp(n xl) x exp(n xr). Throws std::invalid_argument for non-generic pairs.
GroupElement z_action(const KillingPair& xi, long n, const GroupElement& x);

// x = tau_g(exp(aH)) with coset gA represented by g = k(phi) n(s).
struct TwistedCoords {
  double a = 0, phi = 0, s = 0;
};

GroupElement coset_rep(double phi, double s);
TwistedCoords twisted_iwasawa_decompose(const GroupElement& x);
GroupElement twisted_iwasawa_compose(const TwistedCoords& c);
// Left action of G on G/A in the KN model: g . (phi, s).
TwistedCoords coset_left_multiply(const GroupElement& g, const TwistedCoords& c);

// Chart tangent (da, dphi, ds) at a point of the twisted chart.
struct ChartTangent {
  double da = 0, dphi = 0, ds = 0;
};

// Coset variation g^-1 dg reduced mod the A direction: returns the (E, F) components.
void coset_tangent_ef(const TwistedCoords& c, const ChartTangent& v, double& ye, double& yf);
// Orbit metric on O = Ad(G)H induced by beta, in coset-tangent components.
double orbit_metric(double ve, double vf, double we, double wf);
// Block metric da^2 - 8 cosh^2(a/(2 sqrt 2)) ds^2_orbit.
double metric_eval(const TwistedCoords& at, const ChartTangent& v, const ChartTangent& w);
double fiber_scale(double a);  // 8 cosh^2(a / (2 sqrt 2))

AlgebraVector killing_vector_at(const KillingPair& xi, const GroupElement& x);

enum class CausalClass { SPACELIKE_REGION, NULL_SET, TIMELIKE_REGION, FIXED_POINT };
std::string to_string(CausalClass c);

double null_band(const GroupElement& x, double scale = 1e-9);
CausalClass causal_character(const KillingPair& xi, const GroupElement& x, double scale = 1e-9);

bool in_za_n(const GroupElement& x, double tol = 1e-10);     // x in Z(G) A N
bool in_za_nbar(const GroupElement& x, double tol = 1e-10);  // x in Z(G) A Nbar
bool in_singularity(const GroupElement& x, double tol = 1e-10);
bool in_horizon(const GroupElement& x, double tol = 1e-10);

// Label m of the component M^{zJ}, z = k(m pi), containing x (spinless pairs only).
// Throws std::domain_error when x is not in the spacelike region.
long component_id(const KillingPair& xi, const GroupElement& x);

struct RotParams {
  double alpha = 0;
  explicit RotParams(double al);
};

// x = a(t) n(s) k(kappa) a(alpha t).
struct ModifiedIwasawa {
  double t = 0, s = 0, kappa = 0;
};

ModifiedIwasawa modified_iwasawa_decompose(const GroupElement& x, const RotParams& p);
GroupElement modified_iwasawa_compose(const ModifiedIwasawa& m, const RotParams& p);

// Element a(t) n(s) of R = AN.
struct ANElement {
  double t = 0, s = 0;
  GroupElement group() const;
};

ANElement an_multiply(const ANElement& x, const ANElement& y);
ANElement an_inverse(const ANElement& x);

// (an, x) -> a n x a^alpha.
GroupElement taub_action(const ANElement& r, const GroupElement& x, const RotParams& p);

// Rotating pairs from pair_from_mass_spin: z_action(n) = taub(exp(n cL H)) with alpha = cR/cL.
RotParams rot_params_of(const KillingPair& xi, double& c_left);

struct ExtensionLabel {
  bool member = false;
  int sign = 0;     // sign of beta(E, Ad(g)H)
  long sheet = 0;   // AN-orbit index in the cover G~/A
};

ExtensionLabel extension_domain_membership(const KillingPair& xi, const GroupElement& x, double tol = 1e-10);
// Same test on a coset directly.
ExtensionLabel coset_extension_label(double phi, double s, double tol = 1e-10);
// Reference coset of a spinless AN-orbit sheet.
TwistedCoords sheet_reference(long sheet, double a = 0);
// R-coordinates on a sheet: coset = r . reference(sheet). The coset must lie on the sheet.
ANElement sheet_r_coords(const TwistedCoords& c, long sheet);
TwistedCoords sheet_point(long sheet, const ANElement& r, double a);

}  // namespace adsdeform
