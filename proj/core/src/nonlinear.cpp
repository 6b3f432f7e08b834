#include "hydrostokes/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

#include "fft.hpp"
#include "hydrostokes/errors.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {
namespace {

using detail::Direction;

struct NodeSet {
  std::vector<double> s;  // nodes in (0, 1)
  std::vector<double> w;  // weights summing to 1
};

NodeSet gauss_legendre(int count) {
  const auto positive = boost::math::legendre_p_zeros<double>(count);
  NodeSet out;
  for (double x : positive) {
    const double dp = boost::math::legendre_p_prime(count, x);
    const double weight = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/(...) halved for (0,1)
    out.s.push_back(0.5 * (1.0 + x));
    out.w.push_back(weight);
    if (x != 0.0) {
      out.s.push_back(0.5 * (1.0 - x));
      out.w.push_back(weight);
    }
  }
  return out;
}

NodeSet midpoints(int count) {
  NodeSet out;
  for (int j = 0; j < count; ++j) {
    out.s.push_back((2.0 * j + 1.0) / (2.0 * count));
    out.w.push_back(1.0 / count);
  }
  return out;
}

// Gauss-Legendre points needed to integrate products of four vertical modes
// (frequencies up to about 4 lambda_{K-1} h ~ 2 pi K) to rounding.
int exact_node_count(int k) {
  return static_cast<int>(std::ceil(1.5 * std::numbers::pi * k)) + 16;
}

}  // namespace

PhysicalField vertical_velocity(const SpectralField& v) {
  require(v.ncomp() == 2, "vertical_velocity: two-component field required");
  PhysicalField w = vertical_integral_from_bottom(horizontal_divergence(v));
  for (auto& x : w.data()) x = -x;
  return w;
}

NonlinearWorkspace::NonlinearWorkspace(const Grid& grid, bool dealias)
    : grid_(grid), np_(dealias ? grid.padded().n() : grid.n()) {
  const NodeSet set = dealias ? gauss_legendre(exact_node_count(grid.k())) : midpoints(grid.k());
  const int kq = static_cast<int>(set.s.size());
  const int kk = grid.k();
  const double h = grid.h();
  nodes_.resize(kq);
  sine_.resize(kq, kk);
  slope_.resize(kq, kk);
  antideriv_.resize(kq, kk);
  project_.resize(kk, kq);
  for (int q = 0; q < kq; ++q) {
    nodes_[q] = -h + h * set.s[q];
    for (int k = 0; k < kk; ++k) {
      const double lam = grid.lambda(k);
      const double arg = lam * h * set.s[q];
      sine_(q, k) = std::sin(arg);
      slope_(q, k) = lam * std::cos(arg);
      antideriv_(q, k) = (1.0 - std::cos(arg)) / lam;
      // c_k = (2/h) int f phi_k dz = 2 int_0^1 f phi_k ds
      project_(k, q) = 2.0 * set.w[q] * std::sin(arg);
    }
  }
  buffer_.resize(static_cast<std::size_t>(np_) * np_ * kq);
}

std::vector<double> NonlinearWorkspace::synthesize(const SpectralField& f, int comp,
                                                   const Eigen::MatrixXd& vertical, Deriv deriv,
                                                   double scale) {
  const int kq = vertical_nodes();
  const int kk = grid_.k();
  const int cols = static_cast<int>(grid_.plane_size());
  Eigen::MatrixXd re(kk, cols), im(kk, cols);
  const auto src = f.component(comp);
  for (int j = 0; j < cols; ++j)
    for (int k = 0; k < kk; ++k) {
      re(k, j) = src[static_cast<std::size_t>(j) * kk + k].real();
      im(k, j) = src[static_cast<std::size_t>(j) * kk + k].imag();
    }
  const Eigen::MatrixXd vre = vertical * re;
  const Eigen::MatrixXd vim = vertical * im;

  std::fill(buffer_.begin(), buffer_.end(), Complex{});
  for (int mi = 0; mi < grid_.n(); ++mi) {
    if (grid_.is_nyquist(mi)) continue;
    const int pm = (grid_.signed_index(mi) + np_) % np_;
    for (int ni = 0; ni < grid_.n(); ++ni) {
      if (grid_.is_nyquist(ni)) continue;
      const int pn = (grid_.signed_index(ni) + np_) % np_;
      Complex factor = scale;
      if (deriv == Deriv::x) factor *= Complex(0.0, grid_.wavenumber(mi));
      if (deriv == Deriv::y) factor *= Complex(0.0, grid_.wavenumber(ni));
      const int j = mi * grid_.n() + ni;
      Complex* dst = buffer_.data() + (static_cast<std::size_t>(pm) * np_ + pn) * kq;
      for (int q = 0; q < kq; ++q) dst[q] = factor * Complex(vre(q, j), vim(q, j));
    }
  }
  detail::dft2_interleaved(buffer_.data(), np_, kq, Direction::backward);
  std::vector<double> out(buffer_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buffer_[i].real();
  return out;
}

std::vector<Complex> NonlinearWorkspace::analyze_horizontal(const std::vector<double>& values) {
  const int kq = vertical_nodes();
  for (std::size_t i = 0; i < values.size(); ++i) buffer_[i] = Complex(values[i], 0.0);
  detail::dft2_interleaved(buffer_.data(), np_, kq, Direction::forward);
  const double scale = 1.0 / (static_cast<double>(np_) * np_);
  std::vector<Complex> out(grid_.plane_size() * kq);
  for (int mi = 0; mi < grid_.n(); ++mi) {
    if (grid_.is_nyquist(mi)) continue;
    const int pm = (grid_.signed_index(mi) + np_) % np_;
    for (int ni = 0; ni < grid_.n(); ++ni) {
      if (grid_.is_nyquist(ni)) continue;
      const int pn = (grid_.signed_index(ni) + np_) % np_;
      const Complex* src = buffer_.data() + (static_cast<std::size_t>(pm) * np_ + pn) * kq;
      Complex* dst = out.data() + (static_cast<std::size_t>(mi) * grid_.n() + ni) * kq;
      for (int q = 0; q < kq; ++q) dst[q] = scale * src[q];
    }
  }
  return out;
}

void NonlinearWorkspace::project_vertical(const std::vector<Complex>& columns, SpectralField& out,
                                          int comp) const {
  const int kq = vertical_nodes();
  const int kk = grid_.k();
  const int cols = static_cast<int>(grid_.plane_size());
  Eigen::MatrixXd re(kq, cols), im(kq, cols);
  for (int j = 0; j < cols; ++j)
    for (int q = 0; q < kq; ++q) {
      re(q, j) = columns[static_cast<std::size_t>(j) * kq + q].real();
      im(q, j) = columns[static_cast<std::size_t>(j) * kq + q].imag();
    }
  const Eigen::MatrixXd cre = project_ * re;
  const Eigen::MatrixXd cim = project_ * im;
  auto dst = out.component(comp);
  for (int j = 0; j < cols; ++j)
    for (int k = 0; k < kk; ++k) dst[static_cast<std::size_t>(j) * kk + k] = Complex(cre(k, j), cim(k, j));
}

SpectralField NonlinearWorkspace::advection(const SpectralField& u_src, const SpectralField& v) {
  require(u_src.ncomp() == 2 && v.ncomp() == 2, "advection: two-component fields required");
  require(u_src.grid() == grid_ && v.grid() == grid_, "advection: grid mismatch");
  const SpectralField div = horizontal_divergence(u_src);
  const auto ux = synthesize(u_src, 0, sine_, Deriv::none);
  const auto uy = synthesize(u_src, 1, sine_, Deriv::none);
  const auto w = synthesize(div, 0, antideriv_, Deriv::none, -1.0);
  SpectralField out(grid_, 2);
  for (int c = 0; c < 2; ++c) {
    const auto dx = synthesize(v, c, sine_, Deriv::x);
    const auto dy = synthesize(v, c, sine_, Deriv::y);
    const auto dz = synthesize(v, c, slope_, Deriv::none);
    std::vector<double> prod(ux.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ux[i] * dx[i] + uy[i] * dy[i] + w[i] * dz[i];
    project_vertical(analyze_horizontal(prod), out, c);
  }
  enforce_reality(out);
  return out;
}

SpectralField NonlinearWorkspace::divergence_form(const SpectralField& u_src, const SpectralField& v) {
  require(u_src.ncomp() == 2 && v.ncomp() == 2, "divergence_form: two-component fields required");
  require(u_src.grid() == grid_ && v.grid() == grid_, "divergence_form: grid mismatch");
  const int kq = vertical_nodes();
  const SpectralField div = horizontal_divergence(u_src);
  const auto ux = synthesize(u_src, 0, sine_, Deriv::none);
  const auto uy = synthesize(u_src, 1, sine_, Deriv::none);
  const auto w = synthesize(div, 0, antideriv_, Deriv::none, -1.0);
  const auto dzw = synthesize(div, 0, sine_, Deriv::none, -1.0);
  SpectralField out(grid_, 2);
  for (int c = 0; c < 2; ++c) {
    const auto vc = synthesize(v, c, sine_, Deriv::none);
    const auto dz = synthesize(v, c, slope_, Deriv::none);
    std::vector<double> px(vc.size()), py(vc.size()), pz(vc.size());
    for (std::size_t i = 0; i < vc.size(); ++i) {
      px[i] = ux[i] * vc[i];
      py[i] = uy[i] * vc[i];
      pz[i] = w[i] * dz[i] + dzw[i] * vc[i];
    }
    const auto fx = analyze_horizontal(px);
    const auto fy = analyze_horizontal(py);
    auto total = analyze_horizontal(pz);
    for (int mi = 0; mi < grid_.n(); ++mi)
      for (int ni = 0; ni < grid_.n(); ++ni) {
        const Complex ix(0.0, grid_.wavenumber(mi));
        const Complex iy(0.0, grid_.wavenumber(ni));
        const std::size_t base = (static_cast<std::size_t>(mi) * grid_.n() + ni) * kq;
        for (int q = 0; q < kq; ++q) total[base + q] += ix * fx[base + q] + iy * fy[base + q];
      }
    project_vertical(total, out, c);
  }
  enforce_reality(out);
  return out;
}

SpectralField advection(const SpectralField& v) {
  NonlinearWorkspace ws(v.grid());
  return ws.advection(v);
}

SpectralField divergence_form(const SpectralField& v) {
  NonlinearWorkspace ws(v.grid());
  return ws.divergence_form(v);
}

}  // namespace hydrostokes
