#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hydrostokes/grid.hpp"

namespace hydrostokes {

using Complex = std::complex<double>;

/// Coefficients in the Fourier (horizontal) x sine (vertical) basis.
///
/// Layout is [component][m][n][k] with k fastest; horizontal indices are in
/// FFT order (see Grid). A real field satisfies
/// c(-m,-n,k) = conj(c(m,n,k)) with indices taken mod N.
class SpectralField {
 public:
  SpectralField(Grid grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator()(int c, int mi, int ni, int k) { return coeffs_[offset(c, mi, ni) + k]; }
  const Complex& operator()(int c, int mi, int ni, int k) const {
    return coeffs_[offset(c, mi, ni) + k];
  }

  /// The K vertical coefficients of one horizontal mode.
  std::span<Complex> column(int c, int mi, int ni) {
    return {coeffs_.data() + offset(c, mi, ni), static_cast<std::size_t>(grid_.k())};
  }
  std::span<const Complex> column(int c, int mi, int ni) const {
    return {coeffs_.data() + offset(c, mi, ni), static_cast<std::size_t>(grid_.k())};
  }
  std::span<Complex> component(int c) {
    return {coeffs_.data() + c * grid_.component_size(), grid_.component_size()};
  }
  std::span<const Complex> component(int c) const {
    return {coeffs_.data() + c * grid_.component_size(), grid_.component_size()};
  }

  std::vector<Complex>& data() { return coeffs_; }
  const std::vector<Complex>& data() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  /// Largest coefficient modulus.
  double max_abs() const;

 private:
  std::size_t offset(int c, int mi, int ni) const {
    return (static_cast<std::size_t>(c) * grid_.plane_size() +
            static_cast<std::size_t>(mi) * grid_.n() + ni) *
           grid_.k();
  }

  Grid grid_;
  int ncomp_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Real node values on the collocation grid, layout [component][i][j][jz].
class PhysicalField {
 public:
  PhysicalField(Grid grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int c, int i, int j, int jz) { return values_[offset(c, i, j) + jz]; }
  double operator()(int c, int i, int j, int jz) const { return values_[offset(c, i, j) + jz]; }

  std::span<double> column(int c, int i, int j) {
    return {values_.data() + offset(c, i, j), static_cast<std::size_t>(grid_.k())};
  }
  std::span<const double> column(int c, int i, int j) const {
    return {values_.data() + offset(c, i, j), static_cast<std::size_t>(grid_.k())};
  }
  std::span<double> component(int c) {
    return {values_.data() + c * grid_.component_size(), grid_.component_size()};
  }
  std::span<const double> component(int c) const {
    return {values_.data() + c * grid_.component_size(), grid_.component_size()};
  }

  std::vector<double>& data() { return values_; }
  const std::vector<double>& data() const { return values_; }

  double max_abs() const;

 private:
  std::size_t offset(int c, int i, int j) const {
    return (static_cast<std::size_t>(c) * grid_.plane_size() +
            static_cast<std::size_t>(i) * grid_.n() + j) *
           grid_.k();
  }

  Grid grid_;
  int ncomp_;
  std::vector<double> values_;
};

/// Horizontal (z-independent) Fourier coefficients, layout [component][m][n].
/// Used for vertical means, pressure and purely two-dimensional fields.
class PlanarField {
 public:
  PlanarField(int n, int ncomp);

  int n() const { return n_; }
  int ncomp() const { return ncomp_; }

  Complex& operator()(int c, int mi, int ni) { return coeffs_[offset(c, mi, ni)]; }
  const Complex& operator()(int c, int mi, int ni) const { return coeffs_[offset(c, mi, ni)]; }

  std::vector<Complex>& data() { return coeffs_; }
  const std::vector<Complex>& data() const { return coeffs_; }

 private:
  std::size_t offset(int c, int mi, int ni) const {
    return static_cast<std::size_t>(c) * n_ * n_ + static_cast<std::size_t>(mi) * n_ + ni;
  }

  int n_;
  int ncomp_;
  std::vector<Complex> coeffs_;
};

}  // namespace hydrostokes
