#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

/// Generator block of one horizontal wavenumber.
///
/// The velocity coefficients of a mode split into the component along xi
/// (parallel) and across it (perpendicular). Both see the diagonal Laplacian
/// -(|xi|^2 + lambda_k^2); the parallel one additionally sees the bottom-shear
/// coupling R = (beta_tilde / h) lambda^T, which is rank one and vanishes when
/// xi = 0.
struct ModeOperator {
  double xi_x = 0.0;
  double xi_y = 0.0;
  double xi_squared = 0.0;
  bool coupled = false;
  Eigen::VectorXd diagonal;
  Eigen::MatrixXd coupling;

  Eigen::MatrixXd parallel_block() const;
};

/// Mode block for wavenumber (xi_x, xi_y) with |xi|^2 = xi_x^2 + xi_y^2.
ModeOperator build_mode_operator(double xi_x, double xi_y, const Grid& grid);

/// Mode block of grid mode (mi, ni), honoring the Nyquist convention.
ModeOperator build_mode_operator(const Grid& grid, int mi, int ni);

enum class Subspace { full, solenoidal };

struct ModeSpectrum {
  int m = 0;  ///< signed index
  int n = 0;
  std::vector<std::complex<double>> eigenvalues;
};

struct SpectralBoundReport {
  Subspace subspace = Subspace::full;
  double bound = 0.0;  ///< max real part over all modes
  std::vector<ModeSpectrum> modes;
};

/// Thread-safe LRU memo of per-mode propagators keyed by (|xi| class, t).
class SemigroupCache {
 public:
  struct Entry {
    bool dense = false;
    Eigen::MatrixXd parallel;  ///< dense parallel block (coupled modes)
    Eigen::VectorXd diagonal;  ///< diagonal factors (perpendicular / uncoupled)
  };
  using Key = std::tuple<int, std::uint64_t, bool, std::uint64_t>;  // kind, |xi|^2 bits, coupled, t bits

  explicit SemigroupCache(std::size_t capacity) : capacity_(capacity) {}

  template <class Make>
  std::shared_ptr<const Entry> get(const Key& key, Make&& make);

  std::size_t hits() const;
  std::size_t misses() const;
  std::size_t size() const;

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Key> order_;
  std::map<Key, std::pair<std::shared_ptr<const Entry>, std::list<Key>::iterator>> table_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// The discrete hydrostatic Stokes operator A = Delta + B on one grid.
class StokesOperator {
 public:
  explicit StokesOperator(Grid grid, std::size_t cache_capacity = 4096);

  const Grid& grid() const { return grid_; }

  /// A v.
  SpectralField apply(const SpectralField& v) const;

  /// e^{tA} v; t = 0 is the identity. Throws ContractViolation for t < 0.
  SpectralField semigroup(double t, const SpectralField& v) const;

  /// phi_1(tA) g = (tA)^{-1}(e^{tA} - I) g. Throws ContractViolation for t <= 0.
  SpectralField phi1(double t, const SpectralField& g) const;

  /// (lambda - A)^{-1} f. Throws SingularityError within 1e-10 of the spectrum.
  SpectralField resolvent(std::complex<double> lambda, const SpectralField& f) const;

  /// (lambda - Delta)^{-1} f with the same vertical boundary conditions.
  SpectralField laplace_resolvent(std::complex<double> lambda, const SpectralField& f) const;

  /// Eigenvalues of every mode block and their largest real part.
  SpectralBoundReport spectral_bound(Subspace subspace) const;

  const SemigroupCache& cache() const { return *cache_; }

 private:
  const std::vector<std::complex<double>>& parallel_eigenvalues(const ModeOperator& op) const;

  Grid grid_;
  std::unique_ptr<SemigroupCache> cache_;
  mutable std::mutex eig_mutex_;
  mutable std::map<std::pair<std::uint64_t, bool>, std::vector<std::complex<double>>> eig_table_;
};

template <class Make>
std::shared_ptr<const SemigroupCache::Entry> SemigroupCache::get(const Key& key, Make&& make) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) {
      order_.splice(order_.begin(), order_, it->second.second);
      ++hits_;
      return it->second.first;
    }
    ++misses_;
  }
  // Computed outside the lock; values are a pure function of the key.
  auto entry = std::make_shared<const Entry>(make());
  std::lock_guard lock(mutex_);
  if (auto it = table_.find(key); it != table_.end()) return it->second.first;
  order_.push_front(key);
  table_.emplace(key, std::make_pair(entry, order_.begin()));
  while (table_.size() > capacity_ && !order_.empty()) {
    table_.erase(order_.back());
    order_.pop_back();
  }
  return entry;
}

}  // namespace hydrostokes
