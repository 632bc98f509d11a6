#include "funksphere/transforms.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "funksphere/errors.hpp"
#include "funksphere/parallel.hpp"

namespace funksphere {

namespace {

// Eigenvalues below this are treated as zero when inverting F.
constexpr double kEigenvalueFloor = 1e-13;

double m_weight(const UnitVector& xi, double z) {
  return std::pow(std::sqrt(1.0 - z * z) / (1.0 + z * xi.last()), xi.dim() - 2);
}

double n_weight(const UnitVector& xi, double z) {
  return std::pow(1.0 - z * z * xi.last() * xi.last(), -0.5 * (xi.dim() - 2));
}

double n_inv_weight(const UnitVector& eta, double z) {
  return std::pow((1.0 - z * z) / (1.0 - z * z + z * z * eta.last() * eta.last()), 0.5 * (eta.dim() - 2));
}

int grid_bandlimit(const GridFunction& f, int bandlimit) {
  return bandlimit < 0 ? f.sphere().max_bandlimit() : bandlimit;
}

}  // namespace

void OperatorConfig::validate(const SphereGrid& grid) const {
  require_nonnegative(shift());
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  if (m < 2 * bandlimit + 2)
    throw DomainError("subsphere resolution m = " + std::to_string(m) + " below 2N + 2 = " +
                      std::to_string(2 * bandlimit + 2));
  if (m < 4) throw DomainError("subsphere resolution m must be at least 4");
  if (grid.exact_degree() < 2 * bandlimit)
    throw ResolutionError("grid resolves degree " + std::to_string(grid.exact_degree()) + ", needs 2N = " +
                          std::to_string(2 * bandlimit));
  if (spectral_bandlimit > grid.max_bandlimit())
    throw ResolutionError("spectral bandlimit " + std::to_string(spectral_bandlimit) + " exceeds grid maximum " +
                          std::to_string(grid.max_bandlimit()));
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

int OperatorConfig::resolved_spectral_bandlimit(const SphereGrid& grid) const {
  return spectral_bandlimit < 0 ? grid.max_bandlimit() : spectral_bandlimit;
}

SphereFunction apply_M(SphereFunction f, ShiftParameter shift, Sign sign) {
  const ShiftParameter z(sign == Sign::plus ? shift.value() : -shift.value());
  return [f = std::move(f), z](const UnitVector& xi) { return m_weight(xi, z.value()) * f(h_map(xi, z)); };
}

SphereFunction apply_N(SphereFunction f, ShiftParameter z) {
  require_nonnegative(z);
  return [f = std::move(f), z](const UnitVector& xi) { return n_weight(xi, z.value()) * f(g_map(xi, z)); };
}

SphereFunction apply_N_inv(SphereFunction f, ShiftParameter z) {
  require_nonnegative(z);
  return [f = std::move(f), z](const UnitVector& eta) { return n_inv_weight(eta, z.value()) * f(g_inv(eta, z)); };
}

SphereFunction symmetrize_z(SphereFunction f, ShiftParameter z) {
  require_nonnegative(z);
  return [f = std::move(f), z](const UnitVector& w) {
    return 0.5 * (f(w) + reflection_weight(w, z) * f(r_map(w, z)));
  };
}

GridFunction apply_M(const GridFunction& f, ShiftParameter z, Sign sign, int bandlimit) {
  return sample(apply_M(interpolant(analyze(f, grid_bandlimit(f, bandlimit))), z, sign), f.grid());
}

GridFunction apply_N(const GridFunction& f, ShiftParameter z, int bandlimit) {
  return sample(apply_N(interpolant(analyze(f, grid_bandlimit(f, bandlimit))), z), f.grid());
}

GridFunction apply_N_inv(const GridFunction& f, ShiftParameter z, int bandlimit) {
  return sample(apply_N_inv(interpolant(analyze(f, grid_bandlimit(f, bandlimit))), z), f.grid());
}

GridFunction symmetrize_z(const GridFunction& f, ShiftParameter z, int bandlimit) {
  require_nonnegative(z);
  const SphereFunction smooth = interpolant(analyze(f, grid_bandlimit(f, bandlimit)));
  // The identity term uses the samples themselves; only f(r_z(w)) is interpolated.
  const auto& nodes = f.sphere().nodes();
  std::vector<double> out(f.size());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = 0.5 * (f[i] + reflection_weight(nodes[i], z) * smooth(r_map(nodes[i], z)));
  });
  return GridFunction(f.grid(), std::move(out));
}

GridFunction spherical_transform_direct(const SphereFunction& f, const SphereGridPtr& grid,
                                        const OperatorConfig& cfg) {
  cfg.validate(*grid);
  const ShiftParameter z = cfg.shift();
  return sample([&](const UnitVector& xi) { return mean_over_subsphere(f, xi, z, cfg.m); }, grid);
}

GridFunction funk_radon(const SphereFunction& f, const SphereGridPtr& grid, int m) {
  const ShiftParameter zero(0.0);
  return sample([&](const UnitVector& xi) { return mean_over_subsphere(f, xi, zero, m); }, grid);
}

GridFunction spherical_transform_factored(const SphereFunction& f, const SphereGridPtr& grid,
                                          const OperatorConfig& cfg) {
  cfg.validate(*grid);
  const ShiftParameter z = cfg.shift();
  const SphereFunction mf = apply_M(f, z);
  if (cfg.funk_route == FunkRoute::quadrature) {
    const ShiftParameter zero(0.0);
    return sample([&](const UnitVector& xi) {
      return n_weight(xi, z.value()) * mean_over_subsphere(mf, g_map(xi, z), zero, cfg.m);
    }, grid);
  }
  const HarmonicCoeffs fmf =
      funk_spectral(analyze(sample(mf, grid), cfg.resolved_spectral_bandlimit(*grid)), Direction::forward);
  return sample([&](const UnitVector& xi) {
    return n_weight(xi, z.value()) * synthesize_at(fmf, g_map(xi, z));
  }, grid);
}

HarmonicCoeffs funk_spectral(const HarmonicCoeffs& c, Direction direction, double range_threshold) {
  HarmonicCoeffs out = c;
  const int d = c.dim();
  if (direction == Direction::forward) {
    for (int n = 0; n <= c.bandlimit(); ++n) {
      const double lambda = funk_eigenvalue(n, d);
      for (double& v : out.block(n)) v *= lambda;
    }
    return out;
  }
  const double odd = c.odd_energy_fraction();
  if (odd > range_threshold) {
    std::ostringstream msg;
    msg << "data is not in the range of the Funk-Radon transform: odd energy fraction " << odd
        << " exceeds " << range_threshold;
    throw NotInRangeError(msg.str(), odd);
  }
  for (int n = 0; n <= c.bandlimit(); ++n) {
    auto blk = out.block(n);
    if (n % 2 == 1) {
      for (double& v : blk) v = 0.0;
      continue;
    }
    const double lambda = funk_eigenvalue(n, d);
    if (std::abs(lambda) < kEigenvalueFloor)
      throw ConditioningError("Funk eigenvalue of degree " + std::to_string(n) + " is numerically zero");
    for (double& v : blk) v /= lambda;
  }
  return out;
}

GridFunction inverse_spherical_transform(const GridFunction& g, const OperatorConfig& cfg) {
  const SphereGridPtr& grid = g.grid();
  cfg.validate(*grid);
  const ShiftParameter z = cfg.shift();
  const int bandlimit = cfg.resolved_spectral_bandlimit(*grid);

  // N_z^{-1} g needs g at g_z^{-1}(eta), off the grid.
  const GridFunction funk_data =
      sample(apply_N_inv(interpolant(analyze(g, bandlimit)), z), grid);
  const HarmonicCoeffs preimage = funk_spectral(analyze(funk_data, bandlimit), Direction::inverse);
  return sample(apply_M(interpolant(preimage), z, Sign::minus), grid);
}

double sobolev_gain(const SphereFunction& f, const SphereGridPtr& grid, const OperatorConfig& cfg,
                    SobolevIndex s) {
  const int bandlimit = cfg.resolved_spectral_bandlimit(*grid);
  const double input = sobolev_norm(analyze(sample(f, grid), bandlimit), s);
  if (!(input > 0.0)) throw DomainError("Sobolev gain of a zero function");
  const GridFunction image = spherical_transform_direct(f, grid, cfg);
  const SobolevIndex target(s.value() + 0.5 * (grid->dim() - 2));
  return sobolev_norm(analyze(image, bandlimit), target) / input;
}

}  // namespace funksphere
