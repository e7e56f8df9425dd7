#pragma once
// Leafwise symplectic form on AdS3, B-field profiles and the abelian-action Poisson bracket.

#include <functional>
#include <vector>

#include "adsdeform/bhtz.hpp"

namespace adsdeform {

// KKS form beta(xi, [X, Y]) at xi for v = [X, xi], w = [Y, xi].
// Throws std::invalid_argument when v or w is not tangent to the orbit through xi.
double kks_form(const AlgebraVector& xi, const AlgebraVector& v, const AlgebraVector& w);

// Chart transport of the KKS form of Ad(G)H, extended by zero on the transversal.
double omega_eval(const TwistedCoords& at, const ChartTangent& v, const ChartTangent& w);
double omega_eval(const GroupElement& x, const ChartTangent& v, const ChartTangent& w);

// Metric volume sqrt|det g| in the twisted chart.
double volume_density(const TwistedCoords& at);
// (da ^ omega)(d_a, d_phi, d_s).
double da_omega_density(const TwistedCoords& at);

enum class ProfileKind { TANH, VOLUME_MATCHED };

struct BFieldProfile {
  ProfileKind kind = ProfileKind::TANH;
  double c = 0;
  double value(double a) const;
  double derivative(double a) const;
};

// tanh(a/2) + c, the stated profile.
BFieldProfile tanh_profile(double c = 0);
// Profile with f' proportional to the metric volume over da ^ omega, f(0) = c.
BFieldProfile volume_matched_profile(double c = 0);

struct BFieldCalibration {
  double scale = 1;  // nu = scale * f' da ^ omega at the identity
};

BFieldCalibration calibrate_bfield(const BFieldProfile& f);
// |scale f'(a) (da^omega)(e1,e2,e3) - nu(e1,e2,e3)| / |nu| on the orthonormal chart frame at x.
double bfield_check(const BFieldProfile& f, const BFieldCalibration& cal, const GroupElement& x);

using ScalarFn = std::function<double(const std::vector<double>&)>;
// x -> alpha_t(x) for t in R^d.
using AbelianAction = std::function<std::vector<double>(const std::vector<double>& x, const std::vector<double>& t)>;

// {u, v} = J^{ij} (X_i u)(X_j v), fundamental fields by Richardson-extrapolated central differences.
ScalarFn abelian_poisson(ScalarFn u, ScalarFn v, std::vector<std::vector<double>> J, AbelianAction action,
                         double step = 1e-4);

}  // namespace adsdeform
