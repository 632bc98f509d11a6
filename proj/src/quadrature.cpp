#include "funksphere/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "funksphere/errors.hpp"
#include "funksphere/parallel.hpp"

namespace funksphere {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre_with_derivative = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };

  Rule1D rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  // Roots come in +-x pairs; find the positive ones by Newton and mirror them
  // so the rule is exactly symmetric.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    const auto lo = static_cast<std::size_t>(i);
    if (hi == lo) x = 0.0;
    const double dp = legendre_with_derivative(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }
  return rule;
}

Rule1D gauss_chebyshev_u(int n) {
  if (n < 1) throw DomainError("Gauss-Chebyshev rule needs at least one node");
  Rule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double angle = kPi * k / (n + 1);
    const auto idx = static_cast<std::size_t>(n - k);  // ascending in t
    rule.nodes[idx] = std::cos(angle);
    const double s = std::sin(angle);
    rule.weights[idx] = kPi / (n + 1) * s * s;
  }
  for (int k = 0; k < n / 2; ++k) {
    const auto a = static_cast<std::size_t>(k), b = static_cast<std::size_t>(n - 1 - k);
    rule.nodes[a] = -rule.nodes[b];
    rule.weights[a] = rule.weights[b];
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

SphereGrid::SphereGrid(int d, int L, int M) : d_(d), L_(L), M_(M) {
  if (d != 3 && d != 4) throw DomainError("sphere grids support d in {3, 4}, got d = " + std::to_string(d));
  if (L < 2 || M < 2) throw DomainError("sphere grid resolution needs L, M >= 2");
  if (d == 3) {
    lat_ = gauss_legendre(L);
    nodes_.reserve(static_cast<std::size_t>(L) * static_cast<std::size_t>(M));
    weights_.reserve(nodes_.capacity());
    for (int i = 0; i < L; ++i) {
      const double t = lat_.nodes[static_cast<std::size_t>(i)];
      const double s = std::sqrt((1.0 - t) * (1.0 + t));
      for (int j = 0; j < M; ++j) {
        const double phi = 2.0 * kPi * j / M;
        nodes_.push_back(UnitVector{s * std::cos(phi), s * std::sin(phi), t});
        weights_.push_back(lat_.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / M);
      }
    }
  } else {
    lat_ = gauss_chebyshev_u(L);
    slice_ = std::make_shared<const SphereGrid>(3, L, M);
    nodes_.reserve(static_cast<std::size_t>(L) * slice_->size());
    weights_.reserve(nodes_.capacity());
    for (int i = 0; i < L; ++i) {
      const double t = lat_.nodes[static_cast<std::size_t>(i)];
      const double s = std::sqrt((1.0 - t) * (1.0 + t));
      for (std::size_t k = 0; k < slice_->size(); ++k) {
        const UnitVector& w = slice_->nodes()[k];
        nodes_.push_back(UnitVector{s * w[0], s * w[1], s * w[2], t});
        weights_.push_back(lat_.weights[static_cast<std::size_t>(i)] * slice_->weights()[k]);
      }
    }
  }
}

int SphereGrid::exact_degree() const noexcept { return std::min(2 * L_ - 1, M_ - 1); }

std::size_t SphereGrid::antipode(std::size_t index) const {
  if (M_ % 2 != 0) throw DomainError("antipodal node pairs need an even number of longitudes");
  const std::size_t ring = ring_size();
  const std::size_t i = index / ring, k = index % ring;
  const std::size_t mirrored = static_cast<std::size_t>(L_) - 1 - i;
  if (d_ == 3) {
    const auto m = static_cast<std::size_t>(M_);
    return mirrored * m + (k + m / 2) % m;
  }
  return mirrored * ring + slice_->antipode(k);
}

SphereGridPtr sphere_grid(int d, int L, int M) { return std::make_shared<const SphereGrid>(d, L, M); }

GridFunction::GridFunction(SphereGridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw DomainError("grid function without a grid");
  if (values_.size() != grid_->size())
    throw DomainError("grid function has " + std::to_string(values_.size()) + " values for " +
                      std::to_string(grid_->size()) + " nodes");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction sample(const SphereFunction& f, const SphereGridPtr& grid) {
  std::vector<double> values(grid->size());
  const auto& nodes = grid->nodes();
  parallel_for(values.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = f(nodes[i]);
  });
  return GridFunction(grid, std::move(values));
}

double integrate_sphere(const GridFunction& f) {
  const auto& w = f.sphere().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) throw DomainError("inner product of grid functions on different grids");
  const auto& w = f.sphere().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

double max_abs_difference(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) throw DomainError("comparing grid functions on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

namespace {

// Orthonormal basis of xi^perp whose last vector is the direction of e_d
// projected into xi^perp. Integrands built from the shift maps depend on the
// longitude around that axis only polynomially, so the product rule below
// puts all the rational behaviour into the polar direction.
std::vector<Vector> polar_frame(const UnitVector& xi) {
  std::vector<Vector> basis = tangent_frame(xi).basis;
  const int d = xi.dim();
  Vector axis(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) axis[static_cast<std::size_t>(i)] = -xi.last() * xi[i];
  axis.back() += 1.0;
  const double len = std::sqrt(std::inner_product(axis.begin(), axis.end(), axis.begin(), 0.0));
  if (len < 1e-8) return basis;
  for (double& x : axis) x /= len;

  std::vector<Vector> out;
  for (Vector v : basis) {
    for (int pass = 0; pass < 2; ++pass) {
      double p = std::inner_product(v.begin(), v.end(), axis.begin(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * axis[i];
      for (const auto& e : out) {
        p = std::inner_product(v.begin(), v.end(), e.begin(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * e[i];
      }
    }
    const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n < 1e-6) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
    if (static_cast<int>(out.size()) == d - 2) break;
  }
  out.push_back(std::move(axis));
  return out;
}

}  // namespace

SubsphereRule subsphere_rule(const UnitVector& xi, ShiftParameter z, int m) {
  if (m < 4) throw DomainError("subsphere rule needs m >= 4");
  Subsphere sub = subsphere(xi, z);
  const int d = xi.dim();
  if (d != 3 && d != 4) throw DomainError("subsphere rules support d in {3, 4}");
  const std::vector<Vector> e = d == 4 ? polar_frame(xi) : tangent_frame(xi).basis;
  const auto& c = sub.center;
  const double r = sub.radius;

  SubsphereRule rule{sub, {}, {}};
  std::array<double, kMaxDim> p{};
  const std::span<const double> pspan(p.data(), static_cast<std::size_t>(d));
  if (d == 3) {
    rule.nodes.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      const double theta = 2.0 * kPi * k / m;
      const double a = r * std::cos(theta), b = r * std::sin(theta);
      for (std::size_t i = 0; i < 3; ++i) p[i] = c[i] + a * e[0][i] + b * e[1][i];
      rule.nodes.emplace_back(pspan);
    }
    rule.weights.assign(static_cast<std::size_t>(m), sub.volume / m);
  } else {
    const Rule1D lat = gauss_legendre(m);
    const std::size_t count = lat.nodes.size() * static_cast<std::size_t>(m);
    rule.nodes.reserve(count);
    rule.weights.reserve(count);
    for (std::size_t l = 0; l < lat.nodes.size(); ++l) {
      const double u = 0.5 * (lat.nodes[l] + 1.0);
      const double theta = kPi * u * u;
      const double t = std::cos(theta), s = std::sin(theta);
      const double w = lat.weights[l] * kPi * u * s;
      for (int k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * k / m;
        const double a = r * s * std::cos(phi), b = r * s * std::sin(phi), h = r * t;
        for (std::size_t i = 0; i < 4; ++i) p[i] = c[i] + a * e[0][i] + b * e[1][i] + h * e[2][i];
        rule.nodes.emplace_back(pspan);
        rule.weights.push_back(w * (2.0 * kPi / m) * r * r);
      }
    }
  }
  return rule;
}

double mean_over_subsphere(const SphereFunction& f, const SubsphereRule& rule) {
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(rule.nodes[i]);
    w += rule.weights[i];
  }
  return s / w;
}

double mean_over_subsphere(const SphereFunction& f, const UnitVector& xi, ShiftParameter z, int m) {
  return mean_over_subsphere(f, subsphere_rule(xi, z, m));
}

}  // namespace funksphere
