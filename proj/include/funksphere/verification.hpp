#pragma once

// Self-checks behind `funksphere verify`: geometric identities of the shift
// maps and the numerical identities of the transform operators, each reported
// as a residual against a tolerance.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "funksphere/sphere_geometry.hpp"

namespace funksphere {

enum class VerifySuite { geometry, transforms, all };

struct VerifyOptions {
  std::vector<double> z_values{0.0, 0.3, 0.7, 0.9};
  std::vector<int> dims{3, 4};
  std::uint64_t seed = 1;
  std::optional<double> tolerance;  // overrides every per-check tolerance
  VerifySuite suite = VerifySuite::all;
};

struct CheckResult {
  std::string check;
  int d = 0;
  double z = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  // NaN residuals fail.
  bool passed() const noexcept { return residual <= tolerance; }
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// CSV with header check,d,z,residual,tolerance,status.
void write_report(std::ostream& out, const std::vector<CheckResult>& results);

/// Uniformly distributed point on S^{d-1}.
UnitVector random_unit_vector(int d, std::mt19937_64& rng);

/// Central-difference images of an orthonormal tangent frame at eta under h_z,
/// compared with the conformal factor: max_ij |<J e_i, J e_j> - s^2 delta_ij| / s^2
/// with s = sqrt(1 - z^2) / (1 + z eta_d).
double pullback_residual(const UnitVector& eta, ShiftParameter z, double step);

/// |pi(h_z(xi)) - sqrt((1 + z) / (1 - z)) pi(xi)| relative to max(1, |pi(h_z(xi))|).
double stereo_scaling_residual(const UnitVector& xi, ShiftParameter z);

/// | |c - (z/2) e_d| - z/2 | for the center c of C_z^xi.
double center_sphere_residual(const UnitVector& xi, ShiftParameter z);

}  // namespace funksphere
