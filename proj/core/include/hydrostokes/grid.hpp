#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace hydrostokes {

/// First-order Fourier wavenumber 2 pi m of FFT-order index idx on an
/// n-point periodic grid, with the Nyquist index mapped to zero.
inline double fourier_wavenumber(int idx, int n) {
  if (2 * idx == n) return 0.0;
  const int m = 2 * idx < n ? idx : idx - n;
  return 2.0 * std::numbers::pi * m;
}

/// Vertical sine basis phi_k(z) = sin(lambda_k (z + h)) on (-h, 0).
///
/// Every phi_k vanishes at the bottom z = -h and has zero slope at the
/// surface z = 0. The constant function 1 expands as sum_k beta_k phi_k;
/// truncating that expansion to K terms leaves a vertical mean of sigma_K.
struct VerticalBasis {
  std::vector<double> lambdas;  ///< (2k+1) pi / (2h)
  std::vector<double> betas;    ///< 2 / (h lambda_k)
  double sigma = 0.0;           ///< (2/h^2) sum_k lambda_k^-2, in (0, 1)

  VerticalBasis(int k, double h);
};

/// Tensor grid on the periodic layer (0,1)^2 x (-h, 0).
///
/// Horizontal nodes x_i = i/N. Horizontal indices are stored in FFT order;
/// index idx corresponds to the signed wavenumber m = idx for idx < N/2 and
/// m = idx - N otherwise. Vertical nodes are the DST-IV midpoints
/// z_j = -h + (2j+1) h / (2K).
///
/// Normalization table (shared by every transform in the library):
///   physical f(x,y,z_j) = sum_{m,n,k} c(m,n,k) e^{2 pi i (m x + n y)} phi_k(z_j)
///   forward  c = (1/N^2) DFT_xy  o  (2/K) DST-IV_z
///   L^2 norm ||f||^2 = (h/2) sum |c|^2
///
/// The Nyquist index m = -N/2 has no conjugate partner with opposite
/// wavenumber, so first-order symbols (derivatives, projection directions)
/// treat its component as zero. Second-order symbols use the true 2 pi m.
class Grid {
 public:
  Grid(int n, int k, double h);

  int n() const { return n_; }
  int k() const { return k_; }
  double h() const { return h_; }

  /// Number of horizontal nodes per plane (N^2).
  std::size_t plane_size() const { return static_cast<std::size_t>(n_) * n_; }
  /// Number of nodes / coefficients per component (N^2 K).
  std::size_t component_size() const { return plane_size() * k_; }

  int signed_index(int idx) const { return idx < n_ / 2 ? idx : idx - n_; }
  bool is_nyquist(int idx) const { return idx == n_ / 2; }
  /// First-order wavenumber 2 pi m with the Nyquist component zeroed.
  double wavenumber(int idx) const { return fourier_wavenumber(idx, n_); }
  /// |xi|^2 with the true Nyquist wavenumber.
  double xi_squared(int mi, int ni) const;
  /// m^2 + n^2 with true signed indices; an exact key for |xi|^2.
  int index_squared(int mi, int ni) const;

  double node_x(int i) const { return static_cast<double>(i) / n_; }
  double node_z(int j) const { return -h_ + (2.0 * j + 1.0) * h_ / (2.0 * k_); }

  const VerticalBasis& vertical() const { return *basis_; }
  double lambda(int k) const { return basis_->lambdas[k]; }

  /// Grid used for dealiased products: at least 3N/2 (even) by 3K/2.
  Grid padded() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && k_ == other.k_ && h_ == other.h_;
  }

 private:
  int n_;
  int k_;
  double h_;
  std::shared_ptr<const VerticalBasis> basis_;
};

}  // namespace hydrostokes
