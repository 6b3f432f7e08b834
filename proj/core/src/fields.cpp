#include "hydrostokes/fields.hpp"

#include <algorithm>
#include <cmath>

#include "hydrostokes/errors.hpp"

namespace hydrostokes {

SpectralField::SpectralField(Grid grid, int ncomp)
    : grid_(std::move(grid)), ncomp_(ncomp) {
  require(ncomp == 1 || ncomp == 2, "spectral field: ncomp must be 1 or 2");
  coeffs_.assign(static_cast<std::size_t>(ncomp) * grid_.component_size(), Complex{});
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require(grid_ == other.grid_ && ncomp_ == other.ncomp_, "spectral field: shape mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require(grid_ == other.grid_ && ncomp_ == other.ncomp_, "spectral field: shape mismatch in -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

PhysicalField::PhysicalField(Grid grid, int ncomp) : grid_(std::move(grid)), ncomp_(ncomp) {
  require(ncomp >= 1, "physical field: ncomp must be positive");
  values_.assign(static_cast<std::size_t>(ncomp) * grid_.component_size(), 0.0);
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

PlanarField::PlanarField(int n, int ncomp) : n_(n), ncomp_(ncomp) {
  require(n >= 1 && ncomp >= 1, "planar field: bad shape");
  coeffs_.assign(static_cast<std::size_t>(ncomp) * n * n, Complex{});
}

}  // namespace hydrostokes
