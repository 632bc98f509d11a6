#pragma once

// Integration on S^{d-1} (tensor-product grids) and on the subspheres
// C_z^xi, plus the grid-sampled function type shared by all operators.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "funksphere/sphere_geometry.hpp"

namespace funksphere {

using SphereFunction = std::function<double(const UnitVector&)>;

struct Rule1D {
  std::vector<double> nodes;  // strictly increasing
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for degree 2n - 1.
Rule1D gauss_legendre(int n);

/// n-point Gauss rule for the weight sqrt(1 - t^2) on [-1, 1]
/// (Chebyshev polynomials of the second kind), exact for degree 2n - 1.
Rule1D gauss_chebyshev_u(int n);

/// Tensor-product quadrature on S^{d-1}, d in {3, 4}.
///
/// d = 3: L Gauss-Legendre nodes in t = cos(theta) times M uniform
/// longitudes phi_j = 2 pi j / M. Nodes are enumerated latitude-major,
/// longitude-minor: index = i * M + j, i over ascending t.
///
/// d = 4: L latitudes t = eta_4 from the rule for the weight sqrt(1 - t^2)
/// times the d = 3 grid (L, M) on the slice. index = i * (L*M) + k where k
/// enumerates the S^2 grid.
class SphereGrid {
 public:
  SphereGrid(int d, int L, int M);

  int dim() const noexcept { return d_; }
  int L() const noexcept { return L_; }
  int M() const noexcept { return M_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<UnitVector>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Latitude rule (t values and weights) in the distinguished coordinate.
  const Rule1D& latitudes() const noexcept { return lat_; }
  /// The S^2 slice grid for d = 4; null for d = 3.
  const std::shared_ptr<const SphereGrid>& slice() const noexcept { return slice_; }
  /// Nodes per latitude ring.
  std::size_t ring_size() const noexcept { return size() / static_cast<std::size_t>(L_); }

  /// Largest polynomial degree integrated exactly.
  int exact_degree() const noexcept;
  /// Largest N for which degree-N harmonics are analyzed exactly.
  int max_bandlimit() const noexcept { return exact_degree() / 2; }

  /// Index of the antipodal node; requires even M.
  std::size_t antipode(std::size_t index) const;

 private:
  int d_, L_, M_;
  Rule1D lat_;
  std::shared_ptr<const SphereGrid> slice_;
  std::vector<UnitVector> nodes_;
  std::vector<double> weights_;
};

using SphereGridPtr = std::shared_ptr<const SphereGrid>;

/// Builds a grid; throws DomainError for unsupported d or L, M < 2.
SphereGridPtr sphere_grid(int d, int L, int M);

/// Values sampled at the nodes of a SphereGrid.
class GridFunction {
 public:
  GridFunction(SphereGridPtr grid, std::vector<double> values);

  const SphereGridPtr& grid() const noexcept { return grid_; }
  const SphereGrid& sphere() const noexcept { return *grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  SphereGridPtr grid_;
  std::vector<double> values_;
};

GridFunction sample(const SphereFunction& f, const SphereGridPtr& grid);

/// Sum of w_i f(eta_i).
double integrate_sphere(const GridFunction& f);
double inner_product(const GridFunction& f, const GridFunction& g);
double max_abs_difference(const GridFunction& f, const GridFunction& g);

struct SubsphereRule {
  Subsphere subsphere;
  std::vector<UnitVector> nodes;
  std::vector<double> weights;  // sum to subsphere.volume
};

/// Quadrature on C_z^xi.
///
/// d = 3: m equispaced points on the circle (trapezoid rule).
/// d = 4: m latitudes times m longitudes on the 2-sphere, scaled to the
/// subsphere radius. The polar axis is the projection of e_d onto the
/// subsphere's hyperplane, so the integrands met here (weights in eta_d or
/// in |omega - z e_d|, composed with the shift maps) vary rationally only in
/// the polar angle. The polar angle is theta = pi u^2 with u on Gauss-Legendre
/// nodes, which crowds nodes toward the point nearest z e_d where W_z and
/// f o r_z peak. The rule is not exact for polynomials, but it converges
/// geometrically for every integrand analytic on the subsphere.
/// Requires 0 <= z < 1 and m >= 4.
SubsphereRule subsphere_rule(const UnitVector& xi, ShiftParameter z, int m);

/// Mean of f over C_z^xi.
double mean_over_subsphere(const SphereFunction& f, const UnitVector& xi, ShiftParameter z, int m);
double mean_over_subsphere(const SphereFunction& f, const SubsphereRule& rule);

}  // namespace funksphere
