#pragma once

// Spherical harmonic analysis on S^{d-1}: dimension-d Legendre polynomials,
// degree projectors, Laplace-series analysis/synthesis in a concrete real
// orthonormal basis, Sobolev norms and the Funk-Radon multipliers.
//
// Basis ordering inside a degree-n block (k is 0-based):
//   d = 3: k = n + m, m = -n..n; m > 0 is sqrt(2) N P_n^m cos(m phi),
//          m < 0 the matching sin(|m| phi), no Condon-Shortley phase.
//   d = 4: k = j^2 + j + m for j = 0..n, m = -j..j; the basis function is
//          p_{n-j}(t) |x|^j Y_j^m(x / |x|) with eta = (x, t), x in R^3,
//          where p_k are the orthonormal Gegenbauer polynomials for the
//          weight (1 - t^2)^{j + 1/2}.

#include <cstdint>
#include <span>
#include <vector>

#include "funksphere/quadrature.hpp"

namespace funksphere {

/// P_{n,d}(t), normalized so that P_{n,d}(1) = 1. Throws DomainError for |t| > 1.
double legendre(int n, int d, double t);

/// Dimension N_{n,d} of the degree-n harmonic space on S^{d-1}.
std::uint64_t dim_harmonic(int n, int d);

/// Number of basis functions of degree <= N.
std::size_t coeff_count(int d, int N);

class HarmonicCoeffs {
 public:
  HarmonicCoeffs(int d, int bandlimit);

  int dim() const noexcept { return d_; }
  int bandlimit() const noexcept { return N_; }
  std::size_t offset(int n) const noexcept { return offsets_[static_cast<std::size_t>(n)]; }
  std::size_t block_size(int n) const noexcept { return offsets_[static_cast<std::size_t>(n) + 1] - offset(n); }

  double at(int n, std::size_t k) const;
  double& at(int n, std::size_t k);
  std::span<double> block(int n);
  std::span<const double> block(int n) const;
  std::vector<double>& values() noexcept { return c_; }
  const std::vector<double>& values() const noexcept { return c_; }

  /// Sum of squared coefficients of degree n.
  double degree_energy(int n) const;
  double energy() const;
  /// Energy in odd degrees divided by total energy (0 for the zero function).
  double odd_energy_fraction() const;

 private:
  int d_, N_;
  std::vector<std::size_t> offsets_;
  std::vector<double> c_;
};

class SobolevIndex {
 public:
  explicit SobolevIndex(double s);
  double value() const noexcept { return s_; }

 private:
  double s_;
};

/// All basis functions of degree <= N at p, in coefficient order.
void evaluate_basis(int N, const UnitVector& p, std::span<double> out);

double synthesize_at(const HarmonicCoeffs& c, const UnitVector& p);

/// Callable evaluating the Laplace series of c anywhere on the sphere.
SphereFunction interpolant(HarmonicCoeffs c);

/// Coefficients <f, Y_n^k> for n <= N by grid quadrature. Throws
/// ResolutionError when N exceeds the grid's max_bandlimit().
HarmonicCoeffs analyze(const GridFunction& f, int N);

GridFunction synthesize(const HarmonicCoeffs& c, const SphereGridPtr& grid);

/// Degree-n projector through its zonal kernel,
/// (N_{n,d} / |S^{d-1}|) * sum_j w_j f(eta_j) P_{n,d}(<xi, eta_j>).
GridFunction project_degree(const GridFunction& f, int n);

/// sqrt(sum_n (n + (d-2)/2)^{2s} sum_k c_{n,k}^2).
double sobolev_norm(const HarmonicCoeffs& c, SobolevIndex s);

/// Multiplier of the Funk-Radon transform on degree-n harmonics, P_{n,d}(0).
double funk_eigenvalue(int n, int d);

/// Standard normal coefficients up to degree N from a seeded generator.
HarmonicCoeffs random_harmonic_coeffs(int d, int N, std::uint64_t seed);

}  // namespace funksphere
