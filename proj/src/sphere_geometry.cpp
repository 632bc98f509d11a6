#include "funksphere/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "funksphere/errors.hpp"

namespace funksphere {

namespace {

constexpr double kPoleTolerance = 1e-12;

void check_dim(int d) {
  if (d < 3 || d > kMaxDim)
    throw DomainError("sphere dimension d = " + std::to_string(d) +
                      " outside the supported range [3, " + std::to_string(kMaxDim) + "]");
}

}  // namespace

UnitVector::UnitVector(std::span<const double> coords) {
  check_dim(static_cast<int>(coords.size()));
  dim_ = static_cast<int>(coords.size());
  double norm2 = 0.0;
  for (double x : coords) norm2 += x * x;
  const double norm = std::sqrt(norm2);
  if (!(norm >= 0.5 && norm <= 2.0))
    throw DomainError("vector of norm " + std::to_string(norm) + " is not near the unit sphere");
  for (int i = 0; i < dim_; ++i) c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)] / norm;
}

UnitVector::UnitVector(std::initializer_list<double> coords)
    : UnitVector(std::span<const double>(coords.begin(), coords.size())) {}

UnitVector UnitVector::axis(int d, int index) {
  check_dim(d);
  if (index < 0 || index >= d) throw DomainError("axis index out of range");
  UnitVector u;
  u.dim_ = d;
  u.c_[static_cast<std::size_t>(index)] = 1.0;
  return u;
}

double UnitVector::dot(const UnitVector& other) const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c_[static_cast<std::size_t>(i)] * other.c_[static_cast<std::size_t>(i)];
  return s;
}

UnitVector UnitVector::operator-() const noexcept {
  UnitVector u = *this;
  for (int i = 0; i < dim_; ++i) u.c_[static_cast<std::size_t>(i)] = -u.c_[static_cast<std::size_t>(i)];
  return u;
}

double distance(const UnitVector& a, const UnitVector& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

ShiftParameter::ShiftParameter(double z) : z_(z) {
  if (!(std::abs(z) <= kMaxShift))
    throw DomainError("shift parameter z = " + std::to_string(z) + " outside |z| <= 1 - 1e-6");
}

void require_nonnegative(ShiftParameter z) {
  if (z.value() < 0.0)
    throw DomainError("transform operations need z in [0, 1), got z = " + std::to_string(z.value()));
}

double unit_sphere_measure(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

UnitVector h_map(const UnitVector& eta, ShiftParameter shift) {
  const double z = shift.value();
  const int d = eta.dim();
  const double denom = 1.0 + z * eta.last();
  const double scale = std::sqrt(1.0 - z * z) / denom;
  std::array<double, kMaxDim> out{};
  for (int i = 0; i + 1 < d; ++i) out[static_cast<std::size_t>(i)] = scale * eta[i];
  out[static_cast<std::size_t>(d - 1)] = (z + eta.last()) / denom;
  return UnitVector(std::span<const double>(out.data(), static_cast<std::size_t>(d)));
}

UnitVector h_inv(const UnitVector& omega, ShiftParameter z) {
  return h_map(omega, ShiftParameter(-z.value()));
}

UnitVector g_map(const UnitVector& xi, ShiftParameter shift) {
  const double z = shift.value();
  const int d = xi.dim();
  const double scale = 1.0 / std::sqrt(1.0 - z * z * xi.last() * xi.last());
  std::array<double, kMaxDim> out{};
  for (int i = 0; i + 1 < d; ++i) out[static_cast<std::size_t>(i)] = scale * xi[i];
  out[static_cast<std::size_t>(d - 1)] = scale * std::sqrt(1.0 - z * z) * xi.last();
  return UnitVector(std::span<const double>(out.data(), static_cast<std::size_t>(d)));
}

UnitVector g_inv(const UnitVector& omega, ShiftParameter shift) {
  const double z = shift.value();
  const int d = omega.dim();
  const double s = std::sqrt(1.0 - z * z);
  const double scale = 1.0 / std::sqrt(1.0 - z * z + z * z * omega.last() * omega.last());
  std::array<double, kMaxDim> out{};
  for (int i = 0; i + 1 < d; ++i) out[static_cast<std::size_t>(i)] = scale * s * omega[i];
  out[static_cast<std::size_t>(d - 1)] = scale * omega.last();
  return UnitVector(std::span<const double>(out.data(), static_cast<std::size_t>(d)));
}

namespace {

// 1 - omega_d without cancellation near the north pole.
double one_minus_last(const UnitVector& omega) {
  const double w = omega.last();
  if (w <= 0.5) return 1.0 - w;
  double r2 = 0.0;
  for (int i = 0; i + 1 < omega.dim(); ++i) r2 += omega[i] * omega[i];
  return r2 / (1.0 + w);
}

// |omega - z e_d|^2 = 1 - 2 z omega_d + z^2, written as (1 - z)^2 + 2 z (1 - omega_d)
// so that it keeps full relative accuracy when both terms are small.
double reflection_denominator(double z, double u) {
  return (1.0 - z) * (1.0 - z) + 2.0 * z * u;
}

}  // namespace

UnitVector r_map(const UnitVector& omega, ShiftParameter shift) {
  require_nonnegative(shift);
  const double z = shift.value();
  const int d = omega.dim();
  const double u = one_minus_last(omega);
  const double denom = reflection_denominator(z, u);
  const double scale = -(1.0 - z) * (1.0 + z) / denom;
  std::array<double, kMaxDim> out{};
  for (int i = 0; i + 1 < d; ++i) out[static_cast<std::size_t>(i)] = scale * omega[i];
  out[static_cast<std::size_t>(d - 1)] = ((1.0 + z * z) * u - (1.0 - z) * (1.0 - z)) / denom;
  return UnitVector(std::span<const double>(out.data(), static_cast<std::size_t>(d)));
}

double h_stretch(const UnitVector& eta, ShiftParameter shift) {
  const double z = shift.value();
  return std::sqrt(1.0 - z * z) / (1.0 + z * eta.last());
}

double reflection_weight(const UnitVector& omega, ShiftParameter shift) {
  const double z = shift.value();
  const double base = (1.0 - z) * (1.0 + z) / reflection_denominator(z, one_minus_last(omega));
  return std::pow(base, omega.dim() - 2);
}

Vector stereo(const UnitVector& xi) {
  const double gap = one_minus_last(xi);
  if (gap < kPoleTolerance) throw PoleError("stereographic projection undefined at the north pole");
  Vector x(static_cast<std::size_t>(xi.dim() - 1));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = xi[static_cast<int>(i)] / gap;
  return x;
}

UnitVector stereo_inv(std::span<const double> x) {
  const double r2 = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  const int d = static_cast<int>(x.size()) + 1;
  check_dim(d);
  std::array<double, kMaxDim> out{};
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * x[i] / (1.0 + r2);
  out[x.size()] = (r2 - 1.0) / (1.0 + r2);
  return UnitVector(std::span<const double>(out.data(), static_cast<std::size_t>(d)));
}

Subsphere subsphere(const UnitVector& xi, ShiftParameter shift) {
  require_nonnegative(shift);
  const double z = shift.value();
  const int d = xi.dim();
  const double t = z * xi.last();
  Vector center(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) center[static_cast<std::size_t>(i)] = t * xi[i];
  const double rho2 = 1.0 - t * t;
  return Subsphere{xi, z, std::move(center), std::sqrt(rho2),
                   unit_sphere_measure(d - 1) * std::pow(rho2, 0.5 * (d - 2))};
}

double determinant(std::span<const Vector> columns) {
  const auto n = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& col = columns[static_cast<std::size_t>(j)];
    if (static_cast<Eigen::Index>(col.size()) != n) throw DomainError("determinant needs a square matrix");
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m.determinant();
}

TangentFrame tangent_frame(const UnitVector& xi) {
  const int d = xi.dim();
  // Coordinate axes ordered from least to most aligned with xi; stable sort
  // keeps the choice deterministic under ties.
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(xi[a]) < std::abs(xi[b]); });

  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(d - 1));
  const Vector axis = xi.to_vector();
  auto orthogonalize = [&](Vector& v) {
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      double p = std::inner_product(v.begin(), v.end(), axis.begin(), 0.0);
      for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= p * axis[static_cast<std::size_t>(i)];
      for (const auto& e : basis) {
        p = std::inner_product(v.begin(), v.end(), e.begin(), 0.0);
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= p * e[static_cast<std::size_t>(i)];
      }
    }
  };
  for (int k : order) {
    if (static_cast<int>(basis.size()) == d - 1) break;
    Vector v(static_cast<std::size_t>(d), 0.0);
    v[static_cast<std::size_t>(k)] = 1.0;
    orthogonalize(v);
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    // The d-1 least aligned axes always span a complement of xi, but guard
    // against a numerically dependent candidate anyway.
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }

  std::vector<Vector> columns;
  columns.reserve(static_cast<std::size_t>(d));
  columns.push_back(axis);
  columns.insert(columns.end(), basis.begin(), basis.end());
  if (determinant(columns) < 0.0)
    for (double& x : basis.back()) x = -x;
  return TangentFrame{xi, std::move(basis)};
}

}  // namespace funksphere
