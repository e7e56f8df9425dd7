#include "adsdeform/star.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "adsdeform/lie.hpp"
#include "adsdeform/parallel.hpp"

namespace adsdeform {

StarGrid StarGrid::make(int n, double pad_a, double pad_l) {
  if (n < 4) throw std::invalid_argument("StarGrid: need at least 4 points");
  StarGrid g;
  g.n = n;
  g.pad_a = pad_a;
  g.pad_l = pad_l;
  g.h = 4.0 / (n - 1);
  g.na = 2 * static_cast<int>(std::lround(pad_a / g.h)) + 1;
  g.nl = 2 * static_cast<int>(std::lround(pad_l / g.h)) + 1;
  return g;
}

bool StarGrid::in_interior(int i, int j) const {
  return std::abs(a(i)) <= interior + 1e-9 && std::abs(l(j)) <= interior + 1e-9;
}

Field sample(const StarGrid& g, const Profile& f) {
  Field out(g.na, g.nl);
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j) out(i, j) = f(g.a(i), g.l(j));
  return out;
}

double smooth_cutoff(double r, double radius) {
  const double t = std::clamp((r - radius / 2) / (radius / 2), 0.0, 1.0);
  auto bump = [](double s) { return s > 0 ? std::exp(-1 / s) : 0.0; };
  return bump(1 - t) / (bump(1 - t) + bump(t));
}

Profile gaussian_bump(SymPoint center, double sigma, double radius) {
  return [=](double a, double l) {
    const double r = std::hypot(a - center.a, l - center.l);
    return std::exp(-r * r / (2 * sigma * sigma)) * smooth_cutoff(r, radius);
  };
}

double edge_max(const Field& f, int width) {
  double out = 0;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j)
      if (i < width || j < width || i >= f.rows() - width || j >= f.cols() - width)
        out = std::max(out, std::abs(f(i, j)));
  return out;
}

StarEngine::StarEngine(const StarGrid& grid, const StarOptions& opt) : grid_(grid), opt_(opt) {
  if (opt.theta == 0) throw std::invalid_argument("StarEngine: theta must be nonzero");
  if (opt.upsample < 0) throw std::invalid_argument("StarEngine: upsample must be >= 0");
  if (opt_.upsample == 0) opt_.upsample = auto_upsample(grid, opt.theta);
  naf_ = grid.na * opt_.upsample;
  hf_ = grid.h / opt_.upsample;
  af_.resize(naf_);
  for (int i = 0; i < naf_; ++i) af_(i) = grid.a(0) + i * hf_;
  // Every phase depends on index differences d = i - k in -(naf-1)..naf-1, stored at d + naf - 1.
  const int nd = 2 * naf_ - 1;
  const double th = opt.theta, nyq = kPi / grid.h;
  fiber_.resize(grid.nl, nd);
  phase_.resize(nd, grid.nl);
  for (int d = 0; d < nd; ++d) {
    const double rate = 2 * std::sinh((d - naf_ + 1) * hf_) / th;
    const bool keep = !opt_.nyquist_mask || std::abs(rate) < nyq;
    for (int j = 0; j < grid.nl; ++j) {
      const std::complex<double> e = std::polar(1.0, rate * grid.l(j));
      fiber_(j, d) = keep ? e : 0.0;
      phase_(d, j) = e;
    }
  }
}

Eigen::MatrixXcd StarEngine::upsample(const Field& u) const {
  const int r = opt_.upsample, na = grid_.na;
  if (r == 1) return u;
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd out(naf_, grid_.nl);
  std::vector<std::complex<double>> col(na), spec, padded(naf_), back;
  const int pos = (na - 1) / 2;  // na is odd: frequencies -pos..pos
  for (int j = 0; j < grid_.nl; ++j) {
    for (int i = 0; i < na; ++i) col[i] = u(i, j);
    fft.fwd(spec, col);
    std::fill(padded.begin(), padded.end(), 0.0);
    for (int k = 0; k <= pos; ++k) padded[k] = spec[k];
    for (int k = 1; k <= pos; ++k) padded[naf_ - k] = spec[na - k];
    fft.inv(back, padded);
    for (int i = 0; i < naf_; ++i) out(i, j) = back[i] * static_cast<double>(r);
  }
  return out;
}

Field StarEngine::product(const Field& u, const Field& v) const { return assemble(row_coefficients(u, v)); }

std::complex<double> StarEngine::evaluate_row(const Eigen::MatrixXcd& coeff, int i, double l) const {
  std::complex<double> out{};
  for (int d = 0; d < coeff.cols(); ++d)
    out += coeff(i, d) * std::polar(1.0, 2 * std::sinh((d - naf_ + 1) * hf_) / opt_.theta * l);
  return out;
}

Eigen::MatrixXcd StarEngine::row_coefficients(const Field& u, const Field& v) const {
  for (const Field* f : {&u, &v}) {
    if (f->rows() != grid_.na || f->cols() != grid_.nl) throw std::invalid_argument("star: grid shape mismatch");
    if (edge_max(*f) > 1e-2 * std::max(f->cwiseAbs().maxCoeff(), 1e-300))
      throw std::invalid_argument("star: input support reaches the grid padding");
  }
  const int r = opt_.upsample, off = naf_ - 1;
  // Fiber transforms in l: gu(i, d) = h sum_j u(i, j) e^{i Xi_d l_j}, gv with the conjugate phase.
  const Eigen::MatrixXcd gu = grid_.h * upsample(u) * fiber_;
  const Eigen::MatrixXcd gv = grid_.h * upsample(v) * fiber_.conjugate();
  const double hf2 = hf_ * hf_, scale = kStarC0 / (opt_.theta * opt_.theta);
  Eigen::VectorXd ch(2 * naf_ - 1);
  for (int d = 0; d < ch.size(); ++d) ch(d) = std::cosh((d - off) * hf_);
  Eigen::MatrixXcd diag(grid_.na, 2 * naf_ - 1);
  parallel_for(grid_.na, [&](std::size_t xs) {
    const int x = static_cast<int>(xs) * r;  // output row on the refined axis
    Eigen::RowVectorXcd c = Eigen::RowVectorXcd::Zero(2 * naf_ - 1);
    for (int i = 0; i < naf_; ++i) {
      const double ci = ch(i - x + off);
      for (int k = 0; k < naf_; ++k) {
        const double amp = 4 * std::sqrt(ci * ch(i - k + off) * ch(k - x + off));
        c(i - k + off) += amp * gu(i, k - x + off) * gv(k, i - x + off);
      }
    }
    diag.row(static_cast<Eigen::Index>(xs)) = c;
  });
  return (scale * hf2) * diag;
}

std::complex<double> StarEngine::direct(const Field& u, const Field& v, int i, int j) const {
  const Eigen::MatrixXcd uf = upsample(u), vf = upsample(v);
  const SymPoint x{grid_.a(i), grid_.l(j)};
  const double th = opt_.theta, w = hf_ * hf_ * grid_.h * grid_.h;
  std::complex<double> acc{};
  for (int iy = 0; iy < naf_; ++iy)
    for (int iz = 0; iz < naf_; ++iz) {
      const double amp = amplitude_A(x, {af_(iy), 0}, {af_(iz), 0});
      std::complex<double> inner{};
      for (int jy = 0; jy < grid_.nl; ++jy) {
        if (uf(iy, jy) == 0.0) continue;
        for (int jz = 0; jz < grid_.nl; ++jz) {
          const double s = phase_S_closed(x, {af_(iy), grid_.l(jy)}, {af_(iz), grid_.l(jz)});
          inner += std::polar(1.0, s / th) * uf(iy, jy) * vf(iz, jz);
        }
      }
      acc += amp * inner;
    }
  return kStarC0 / (th * th) * w * acc;
}

double StarEngine::max_phase_step() const { return phase_step(grid_, opt_.theta, hf_); }

double phase_step(const StarGrid& g, double theta, double hf, double span) {
  // d/da of 2 sinh(a) l / theta is largest at the span edge and the padding edge in l.
  return 2 * std::cosh(span) * g.l(g.nl - 1) / std::abs(theta) * hf;
}

int auto_upsample(const StarGrid& g, double theta, double span) {
  int r = 1;
  while (phase_step(g, theta, g.h / r, span) > kPi && r < 64) ++r;
  return r;
}

double integral(const StarGrid& g, const Field& f) { return std::abs(f.sum()) * g.h * g.h; }

double interior_relative_defect(const StarGrid& g, const Field& f, const Field& ref) {
  double num = 0, den = 0;
  for (int i = 0; i < g.na; ++i)
    for (int j = 0; j < g.nl; ++j)
      if (g.in_interior(i, j)) {
        num = std::max(num, std::abs(f(i, j) - ref(i, j)));
        den = std::max(den, std::abs(ref(i, j)));
      }
  return num / den;
}

StarReport star_report(const StarGrid& g, const StarOptions& opt, const Profile& pu, const Profile& pv,
                       const Profile& pw) {
  const auto start = std::chrono::steady_clock::now();
  const StarEngine engine(g, opt);
  const Field u = sample(g, pu), v = sample(g, pv), w = sample(g, pw);
  const Field uv = engine.product(u, v);
  const std::complex<double> lhs = uv.sum(), rhs = u.cwiseProduct(v).sum();
  StarReport rep;
  rep.trace_defect = std::abs(lhs - rhs) / std::abs(rhs);
  const Field left = engine.product(uv, w), right = engine.product(u, engine.product(v, w));
  rep.assoc_defect = interior_relative_defect(g, left, right);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Field grid_poisson(const StarGrid& g, const Field& u, const Field& v) {
  Field out = Field::Zero(g.na, g.nl);
  const double h2 = 2 * g.h;
  for (int i = 1; i + 1 < g.na; ++i)
    for (int j = 1; j + 1 < g.nl; ++j) {
      const auto ua = (u(i + 1, j) - u(i - 1, j)) / h2, ul = (u(i, j + 1) - u(i, j - 1)) / h2;
      const auto va = (v(i + 1, j) - v(i - 1, j)) / h2, vl = (v(i, j + 1) - v(i, j - 1)) / h2;
      out(i, j) = ua * vl - ul * va;
    }
  return out;
}

}  // namespace adsdeform
