#pragma once

// The spherical section transform U_z (means over the subspheres C_z^xi
// through the interior point z e_d), its factorization U_z = N_z F M_z
// through the Funk-Radon transform F = U_0, the z-symmetry projector and the
// inversion of U_z on bandlimited data.

#include "funksphere/harmonics.hpp"
#include "funksphere/quadrature.hpp"

namespace funksphere {

enum class Sign { plus, minus };
enum class Direction { forward, inverse };
enum class FunkRoute { quadrature, spectral };

/// Odd-degree energy fraction above which data is outside the range of F.
inline constexpr double kRangeThreshold = 1e-6;

struct OperatorConfig {
  double z = 0.0;
  int m = 256;                   // subsphere quadrature resolution
  int bandlimit = 8;             // bandlimit N of the inputs
  int spectral_bandlimit = -1;   // inner analysis bandlimit; -1 uses the grid maximum
  double tolerance = 1e-8;
  FunkRoute funk_route = FunkRoute::quadrature;

  ShiftParameter shift() const { return ShiftParameter(z); }
  /// Checks 0 <= z < 1, m >= 2N + 2 and that the grid resolves degree 2N.
  void validate(const SphereGrid& grid) const;
  int resolved_spectral_bandlimit(const SphereGrid& grid) const;
};

/// (M_z f)(xi) = (sqrt(1 - z^2) / (1 + z xi_d))^{d-2} f(h_z(xi)); Sign::minus applies M_{-z}.
SphereFunction apply_M(SphereFunction f, ShiftParameter z, Sign sign = Sign::plus);
/// (N_z f)(xi) = (1 - z^2 xi_d^2)^{-(d-2)/2} f(g_z(xi)).
SphereFunction apply_N(SphereFunction f, ShiftParameter z);
/// (N_z^{-1} f)(eta) = ((1 - z^2) / (1 - z^2 + z^2 eta_d^2))^{(d-2)/2} f(g_z^{-1}(eta)).
SphereFunction apply_N_inv(SphereFunction f, ShiftParameter z);

/// (S f)(w) = (f(w) + W_z(w) f(r_z(w))) / 2, the projector onto z-symmetric functions.
SphereFunction symmetrize_z(SphereFunction f, ShiftParameter z);

// Grid versions evaluate off-grid points through the Laplace series of the
// samples at `bandlimit` (-1: the grid maximum), so they are exact only for
// data resolved by the grid.
GridFunction apply_M(const GridFunction& f, ShiftParameter z, Sign sign = Sign::plus, int bandlimit = -1);
GridFunction apply_N(const GridFunction& f, ShiftParameter z, int bandlimit = -1);
GridFunction apply_N_inv(const GridFunction& f, ShiftParameter z, int bandlimit = -1);
GridFunction symmetrize_z(const GridFunction& f, ShiftParameter z, int bandlimit = -1);

/// U_z f at every grid node by quadrature over C_z^xi.
GridFunction spherical_transform_direct(const SphereFunction& f, const SphereGridPtr& grid,
                                        const OperatorConfig& cfg);

/// N_z F M_z f at every grid node. F runs either as quadrature over great
/// subspheres or spectrally (analyze M_z f, scale by the Funk multipliers,
/// evaluate at g_z(xi)).
GridFunction spherical_transform_factored(const SphereFunction& f, const SphereGridPtr& grid,
                                          const OperatorConfig& cfg);

/// F f at every grid node, by quadrature over great subspheres.
GridFunction funk_radon(const SphereFunction& f, const SphereGridPtr& grid, int m);

/// Multiplies degree-n blocks by funk_eigenvalue(n, d), or divides the even
/// blocks and zeroes the odd ones. The inverse throws NotInRangeError when the
/// odd energy fraction exceeds range_threshold.
HarmonicCoeffs funk_spectral(const HarmonicCoeffs& c, Direction direction,
                             double range_threshold = kRangeThreshold);

/// Recovers the z-symmetric preimage M_{-z} F^{-1} N_z^{-1} g on the grid of g.
GridFunction inverse_spherical_transform(const GridFunction& g, const OperatorConfig& cfg);

/// ||U_z f||_{H^{s+(d-2)/2}} / ||f||_{H^s}.
double sobolev_gain(const SphereFunction& f, const SphereGridPtr& grid, const OperatorConfig& cfg,
                    SobolevIndex s);

}  // namespace funksphere
