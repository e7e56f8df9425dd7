#pragma once
// Non-formal star product on the P(1,1) symmetric space, evaluated on a padded uniform grid.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>
#include <numbers>

#include "adsdeform/symsym.hpp"

namespace adsdeform {

// Unit normalization of (1/theta^2) integral A e^{iS/theta} u(y) v(z) dy dz.
constexpr double kStarC0 = 1.0 / (4 * std::numbers::pi * std::numbers::pi);

// Uniform grid: spacing h = 4/(N-1) (N points across [-2,2]), padded to |a| <= pad_a, |l| <= pad_l.
struct StarGrid {
  int n = 24;
  double pad_a = 4.5, pad_l = 14;
  double h = 0;
  int na = 0, nl = 0;  // points per axis
  double interior = 2;

  static StarGrid make(int n, double pad_a = 4.5, double pad_l = 14);
  double a(int i) const { return (i - (na - 1) / 2) * h; }
  double l(int j) const { return (j - (nl - 1) / 2) * h; }
  bool in_interior(int i, int j) const;
};

using Field = Eigen::MatrixXcd;  // rows: a, cols: l
using Profile = std::function<double(double a, double l)>;

Field sample(const StarGrid& g, const Profile& f);
// exp(-r^2/(2 sigma^2)) times a smooth cutoff equal to 1 for r < R/2 and 0 for r > R.
Profile gaussian_bump(SymPoint center, double sigma = 0.25, double radius = 0.8);
double smooth_cutoff(double r, double radius);

// Max |f| over the grid frame of width `width` points; support must stay off the padding edge.
double edge_max(const Field& f, int width = 2);

struct StarOptions {
  double theta = 1;
  int upsample = 0;  // spectral refinement of the a-axis, 0 = auto_upsample
  bool nyquist_mask = true;
};

class StarEngine {
 public:
  StarEngine(const StarGrid& grid, const StarOptions& opt);
  // Throws std::invalid_argument if u or v does not vanish near the padding edge.
  Field product(const Field& u, const Field& v) const;
  // Row x of the product is sum_d coeff(x, d) e^{i Xi_d l}, a closed form in l.
  Eigen::MatrixXcd row_coefficients(const Field& u, const Field& v) const;
  Field assemble(const Eigen::MatrixXcd& coeff) const { return coeff * phase_; }
  std::complex<double> evaluate_row(const Eigen::MatrixXcd& coeff, int i, double l) const;
  // Dense sum over the refined (y, z) grid at one output point, same discretization without the
  // fiber factorization. Equals product() when the Nyquist mask is off.
  std::complex<double> direct(const Field& u, const Field& v, int i, int j) const;
  // Max increment of S/theta per refined a-cell; above pi the output phase is under-resolved.
  double max_phase_step() const;
  const StarGrid& grid() const { return grid_; }
  const StarOptions& options() const { return opt_; }

 private:
  Eigen::MatrixXcd upsample(const Field& u) const;
  StarGrid grid_;
  StarOptions opt_;
  int naf_ = 0;
  double hf_ = 0;
  Eigen::VectorXd af_;
  Eigen::MatrixXcd fiber_;  // (j, d) = mask * exp(i Xi_d l_j), Xi_d = 2 sinh(d hf) / theta
  Eigen::MatrixXcd phase_;  // (d, m) = exp(i Xi_d l_m)
};

// Output phase increment per refined a-cell for index spans up to `span` (support diameter).
double phase_step(const StarGrid& g, double theta, double hf, double span = 1.6);
// Smallest refinement with phase_step <= pi.
int auto_upsample(const StarGrid& g, double theta, double span = 1.6);

double integral(const StarGrid& g, const Field& f);
// max |f - g| over the interior / max |g| over the interior.
double interior_relative_defect(const StarGrid& g, const Field& f, const Field& ref);

struct StarReport {
  double trace_defect = 0;  // |int u*v - int uv| / |int uv|
  double assoc_defect = 0;  // interior sup of (u*v)*w - u*(v*w), relative
  double seconds = 0;
};

StarReport star_report(const StarGrid& g, const StarOptions& opt, const Profile& u, const Profile& v,
                       const Profile& w);

// Centered-difference Poisson bracket d_a u d_l v - d_l u d_a v on the grid.
Field grid_poisson(const StarGrid& g, const Field& u, const Field& v);

}  // namespace adsdeform
