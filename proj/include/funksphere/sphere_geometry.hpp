#pragma once

// Closed-form geometry on the unit sphere S^{d-1} in R^d.
//
// The distinguished axis is the last coordinate: the north pole is
// e_d = (0, ..., 0, 1) and every shift parameter z refers to the interior
// point z e_d.

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

namespace funksphere {

/// Largest ambient dimension supported by the geometry layer.
inline constexpr int kMaxDim = 8;

/// Largest |z| accepted by ShiftParameter.
inline constexpr double kMaxShift = 1.0 - 1e-6;

using Vector = std::vector<double>;

/// A point of S^{d-1}, d >= 3.
///
/// Construction renormalizes inputs whose norm lies in [0.5, 2] and rejects
/// anything else, so accumulated roundoff is absorbed but genuine bugs
/// (zero vectors, unscaled data) are caught.
class UnitVector {
 public:
  explicit UnitVector(std::span<const double> coords);
  UnitVector(std::initializer_list<double> coords);

  /// Coordinate axis e_{index+1} in R^d (0-based index).
  static UnitVector axis(int d, int index);
  static UnitVector north_pole(int d) { return axis(d, d - 1); }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  /// The distinguished coordinate xi_d.
  double last() const noexcept { return c_[static_cast<std::size_t>(dim_ - 1)]; }
  std::span<const double> coords() const noexcept {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }
  Vector to_vector() const { return {c_.begin(), c_.begin() + dim_}; }

  double dot(const UnitVector& other) const noexcept;
  UnitVector operator-() const noexcept;

 private:
  UnitVector() = default;
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Euclidean distance between two points of the same sphere.
double distance(const UnitVector& a, const UnitVector& b);

/// The shift z of the interior point z e_d, restricted to |z| <= kMaxShift.
class ShiftParameter {
 public:
  explicit ShiftParameter(double z);
  double value() const noexcept { return z_; }

 private:
  double z_;
};

/// Throws DomainError unless 0 <= z; transform-level results need z in [0, 1).
void require_nonnegative(ShiftParameter z);

/// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2), the surface measure of the unit sphere in R^d.
double unit_sphere_measure(int d);

/// The section C_z^xi = { eta : <eta, xi> = z xi_d }.
struct Subsphere {
  UnitVector axis;
  double z;
  Vector center;  // z xi_d xi
  double radius;  // sqrt(1 - z^2 xi_d^2)
  double volume;  // |S^{d-2}| radius^{d-2}
};

/// Orthonormal basis of the tangent space at `axis`, positively oriented:
/// det(axis, e^1, ..., e^{d-1}) > 0.
struct TangentFrame {
  UnitVector axis;
  std::vector<Vector> basis;
};

UnitVector h_map(const UnitVector& eta, ShiftParameter z);
UnitVector h_inv(const UnitVector& omega, ShiftParameter z);
UnitVector g_map(const UnitVector& xi, ShiftParameter z);
UnitVector g_inv(const UnitVector& omega, ShiftParameter z);

/// Point reflection of the sphere through z e_d along chords. Needs 0 <= z < 1.
UnitVector r_map(const UnitVector& omega, ShiftParameter z);

/// Length scale of Dh_z at eta: sqrt(1 - z^2) / (1 + z eta_d).
double h_stretch(const UnitVector& eta, ShiftParameter z);

/// Weight of the z-symmetry, ((1 - z^2) / (1 - 2 z omega_d + z^2))^{d-2}.
double reflection_weight(const UnitVector& omega, ShiftParameter z);

/// North-pole stereographic projection onto R^{d-1}.
Vector stereo(const UnitVector& xi);
UnitVector stereo_inv(std::span<const double> x);

Subsphere subsphere(const UnitVector& xi, ShiftParameter z);

TangentFrame tangent_frame(const UnitVector& xi);

/// det[v_1, ..., v_d] of d vectors in R^d (columns).
double determinant(std::span<const Vector> columns);

}  // namespace funksphere
