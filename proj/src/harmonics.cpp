#include "funksphere/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "funksphere/errors.hpp"
#include "funksphere/parallel.hpp"

namespace funksphere {

namespace {

constexpr double kPi = std::numbers::pi;

void check_supported(int d) {
  if (d != 3 && d != 4) throw DomainError("harmonic basis supports d in {3, 4}, got d = " + std::to_string(d));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Recurrence coefficients of the solid harmonics, stored at l (l + 1) / 2 + m.
struct SolidTable {
  int N = -1;
  std::vector<double> a, b, kmm;
};

const SolidTable& solid_table(int N) {
  thread_local SolidTable tab;
  if (tab.N >= N) return tab;
  const auto size = static_cast<std::size_t>((N + 1) * (N + 2) / 2);
  tab.a.assign(size, 0.0);
  tab.b.assign(size, 0.0);
  tab.kmm.assign(static_cast<std::size_t>(N) + 1, 0.0);
  double kmm = 0.5 / std::sqrt(kPi);
  for (int m = 0; m <= N; ++m) {
    if (m > 0) kmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    tab.kmm[static_cast<std::size_t>(m)] = kmm;
    for (int l = m + 1; l <= N; ++l) {
      const double ll = l, mm = m;
      const auto idx = static_cast<std::size_t>(l * (l + 1) / 2 + m);
      if (l == m + 1) {
        tab.a[idx] = std::sqrt(2.0 * m + 3.0);
      } else {
        tab.a[idx] = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
        tab.b[idx] = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      }
    }
  }
  tab.N = N;
  return tab;
}

// Real solid harmonics |x|^l Y_l^m(x / |x|) for l <= N at x in R^3, written to
// out[l*l + l + m]. r2 = |x|^2 enters only polynomially, so points with
// |x| -> 0 are fine.
void solid_harmonics(int N, double x, double y, double z, double r2, double* out) {
  const SolidTable& tab = solid_table(N);
  double re = 1.0, im = 0.0;  // (x + i y)^m
  for (int m = 0; m <= N; ++m) {
    if (m > 0) {
      const double nre = re * x - im * y;
      im = re * y + im * x;
      re = nre;
    }
    const double kmm = tab.kmm[static_cast<std::size_t>(m)];
    const double cm = m == 0 ? 1.0 : std::numbers::sqrt2 * re;
    const double sm = std::numbers::sqrt2 * im;
    double s2 = 0.0, s1 = kmm;
    for (int l = m; l <= N; ++l) {
      double s;
      const auto idx = static_cast<std::size_t>(l * (l + 1) / 2 + m);
      if (l == m) {
        s = kmm;
      } else if (l == m + 1) {
        s = tab.a[idx] * z * kmm;
      } else {
        s = tab.a[idx] * (z * s1 - tab.b[idx] * r2 * s2);
      }
      if (l > m) {
        s2 = s1;
        s1 = s;
      }
      const auto base = static_cast<std::size_t>(l * l + l);
      if (m == 0) {
        out[base] = s;
      } else {
        out[base + static_cast<std::size_t>(m)] = s * cm;
        out[base - static_cast<std::size_t>(m)] = s * sm;
      }
    }
  }
}

// Recurrence data of the orthonormal Gegenbauer polynomials for the weight
// (1 - t^2)^{lambda - 1/2} on [-1, 1]: p_0 and the Jacobi-matrix entries
// alpha_1..alpha_K.
struct GegenbauerTable {
  double p0 = 0.0;
  std::vector<double> alpha;  // alpha[k] for k = 0..K, alpha[0] unused
  std::vector<double> inv_alpha;
};

GegenbauerTable make_gegenbauer_table(int K, double lambda) {
  GegenbauerTable tab;
  const double h0 = std::exp(0.5 * std::log(kPi) + std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
  tab.p0 = 1.0 / std::sqrt(h0);
  tab.alpha.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    const double kk = k;
    tab.alpha[static_cast<std::size_t>(k)] =
        0.5 * std::sqrt(kk * (kk + 2.0 * lambda - 1.0) / ((kk + lambda) * (kk + lambda - 1.0)));
  }
  tab.inv_alpha.assign(tab.alpha.size(), 0.0);
  for (std::size_t k = 1; k < tab.alpha.size(); ++k) tab.inv_alpha[k] = 1.0 / tab.alpha[k];
  return tab;
}

// Table for lambda = j + 1 covering degrees up to K, cached per thread.
const GegenbauerTable& gegenbauer_table(int j, int K) {
  thread_local std::vector<GegenbauerTable> cache;
  const auto jj = static_cast<std::size_t>(j);
  if (cache.size() <= jj) cache.resize(jj + 1);
  if (cache[jj].alpha.size() < static_cast<std::size_t>(K) + 1) cache[jj] = make_gegenbauer_table(K, j + 1.0);
  return cache[jj];
}

// p_0..p_K at t for lambda = j + 1.
void gegenbauer_orthonormal(int K, int j, double t, double* out) {
  const GegenbauerTable& tab = gegenbauer_table(j, K);
  const double* alpha = tab.alpha.data();
  const double* inv = tab.inv_alpha.data();
  out[0] = tab.p0;
  if (K >= 1) out[1] = t * out[0] * inv[1];
  for (int k = 1; k < K; ++k) out[k + 1] = (t * out[k] - alpha[k] * out[k - 1]) * inv[k + 1];
}

// S^2 analysis of the values on one d = 3 grid, up to degree N. Output is
// indexed l*l + l + m.
std::vector<double> analyze_s2(const SphereGrid& grid, std::span<const double> values, int N) {
  const int L = grid.L(), M = grid.M();
  const auto nb = static_cast<std::size_t>((N + 1) * (N + 1));
  std::vector<double> coeffs(nb, 0.0);
  std::vector<double> cosines(static_cast<std::size_t>(M * (N + 1))), sines(cosines.size());
  for (int j = 0; j < M; ++j)
    for (int m = 0; m <= N; ++m) {
      const double phi = 2.0 * kPi * j / M;
      cosines[static_cast<std::size_t>(j * (N + 1) + m)] = std::cos(m * phi);
      sines[static_cast<std::size_t>(j * (N + 1) + m)] = std::sin(m * phi);
    }
  std::vector<double> a(static_cast<std::size_t>(N + 1)), b(a.size()), lam(nb);
  for (int i = 0; i < L; ++i) {
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
    for (int j = 0; j < M; ++j) {
      const double v = values[static_cast<std::size_t>(i * M + j)];
      for (int m = 0; m <= N; ++m) {
        a[static_cast<std::size_t>(m)] += v * cosines[static_cast<std::size_t>(j * (N + 1) + m)];
        b[static_cast<std::size_t>(m)] += v * sines[static_cast<std::size_t>(j * (N + 1) + m)];
      }
    }
    const double t = grid.latitudes().nodes[static_cast<std::size_t>(i)];
    const double w = grid.latitudes().weights[static_cast<std::size_t>(i)] * 2.0 * kPi / M;
    // On the meridian phi = 0 the solid harmonics reduce to the latitude
    // factors: cos-type entries carry the full factor, sin-type entries vanish.
    solid_harmonics(N, std::sqrt((1.0 - t) * (1.0 + t)), 0.0, t, 1.0, lam.data());
    for (int l = 0; l <= N; ++l)
      for (int m = 0; m <= l; ++m) {
        const auto base = static_cast<std::size_t>(l * l + l);
        const double factor = w * lam[base + static_cast<std::size_t>(m)];
        coeffs[base + static_cast<std::size_t>(m)] += factor * a[static_cast<std::size_t>(m)];
        if (m > 0) coeffs[base - static_cast<std::size_t>(m)] += factor * b[static_cast<std::size_t>(m)];
      }
  }
  return coeffs;
}

// Inverse of analyze_s2: synthesize coefficients (indexed l*l + l + m) on a
// d = 3 grid.
void synthesize_s2(const SphereGrid& grid, std::span<const double> coeffs, int N, std::span<double> out) {
  const int L = grid.L(), M = grid.M();
  std::vector<double> lam(static_cast<std::size_t>((N + 1) * (N + 1)));
  std::vector<double> cm(static_cast<std::size_t>(N + 1)), sm(cm.size());
  for (int i = 0; i < L; ++i) {
    const double t = grid.latitudes().nodes[static_cast<std::size_t>(i)];
    solid_harmonics(N, std::sqrt((1.0 - t) * (1.0 + t)), 0.0, t, 1.0, lam.data());
    std::fill(cm.begin(), cm.end(), 0.0);
    std::fill(sm.begin(), sm.end(), 0.0);
    for (int l = 0; l <= N; ++l)
      for (int m = 0; m <= l; ++m) {
        const auto base = static_cast<std::size_t>(l * l + l);
        const double f = lam[base + static_cast<std::size_t>(m)];
        cm[static_cast<std::size_t>(m)] += f * coeffs[base + static_cast<std::size_t>(m)];
        if (m > 0) sm[static_cast<std::size_t>(m)] += f * coeffs[base - static_cast<std::size_t>(m)];
      }
    for (int j = 0; j < M; ++j) {
      const double phi = 2.0 * kPi * j / M;
      double v = 0.0;
      for (int m = 0; m <= N; ++m)
        v += cm[static_cast<std::size_t>(m)] * std::cos(m * phi) + sm[static_cast<std::size_t>(m)] * std::sin(m * phi);
      out[static_cast<std::size_t>(i * M + j)] = v;
    }
  }
}

void require_resolved(const SphereGrid& grid, int N) {
  if (N < 0) throw DomainError("bandlimit must be nonnegative");
  if (N > grid.max_bandlimit())
    throw ResolutionError("grid (L = " + std::to_string(grid.L()) + ", M = " + std::to_string(grid.M()) +
                          ") resolves bandlimit " + std::to_string(grid.max_bandlimit()) + ", requested " +
                          std::to_string(N));
}

}  // namespace

double legendre(int n, int d, double t) {
  if (n < 0 || d < 3) throw DomainError("legendre needs n >= 0 and d >= 3");
  if (std::abs(t) > 1.0 + 1e-12) throw DomainError("legendre argument outside [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + d - 2.0) * t * p1 - k * p0) / (k + d - 2.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::uint64_t dim_harmonic(int n, int d) {
  if (n < 0 || d < 3) throw DomainError("dim_harmonic needs n >= 0 and d >= 3");
  // homogeneous polynomials of degree n minus those of degree n - 2
  const auto nn = static_cast<std::uint64_t>(n), dd = static_cast<std::uint64_t>(d);
  const std::uint64_t all = binomial(nn + dd - 1, dd - 1);
  return n >= 2 ? all - binomial(nn + dd - 3, dd - 1) : all;
}

std::size_t coeff_count(int d, int N) {
  // Sum of dim_harmonic(n, d) for n <= N telescopes to this.
  const auto n = static_cast<std::uint64_t>(N), k = static_cast<std::uint64_t>(d - 1);
  return static_cast<std::size_t>(binomial(n + k, k) + (N >= 1 ? binomial(n + k - 1, k) : 0));
}

HarmonicCoeffs::HarmonicCoeffs(int d, int bandlimit) : d_(d), N_(bandlimit) {
  check_supported(d);
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  offsets_.resize(static_cast<std::size_t>(bandlimit) + 2);
  offsets_[0] = 0;
  for (int n = 0; n <= bandlimit; ++n)
    offsets_[static_cast<std::size_t>(n) + 1] = offsets_[static_cast<std::size_t>(n)] + dim_harmonic(n, d);
  c_.assign(offsets_.back(), 0.0);
}

double HarmonicCoeffs::at(int n, std::size_t k) const {
  if (n < 0 || n > N_ || k >= block_size(n)) throw DomainError("harmonic index out of range");
  return c_[offset(n) + k];
}

double& HarmonicCoeffs::at(int n, std::size_t k) {
  if (n < 0 || n > N_ || k >= block_size(n)) throw DomainError("harmonic index out of range");
  return c_[offset(n) + k];
}

std::span<double> HarmonicCoeffs::block(int n) { return {c_.data() + offset(n), block_size(n)}; }

std::span<const double> HarmonicCoeffs::block(int n) const { return {c_.data() + offset(n), block_size(n)}; }

double HarmonicCoeffs::degree_energy(int n) const {
  double e = 0.0;
  for (double v : block(n)) e += v * v;
  return e;
}

double HarmonicCoeffs::energy() const {
  double e = 0.0;
  for (double v : c_) e += v * v;
  return e;
}

double HarmonicCoeffs::odd_energy_fraction() const {
  const double total = energy();
  if (total == 0.0) return 0.0;
  double odd = 0.0;
  for (int n = 1; n <= N_; n += 2) odd += degree_energy(n);
  return odd / total;
}

SobolevIndex::SobolevIndex(double s) : s_(s) {
  if (!(s >= 0.0)) throw DomainError("Sobolev index must be nonnegative");
}

void evaluate_basis(int N, const UnitVector& p, std::span<double> out) {
  const int d = p.dim();
  check_supported(d);
  if (out.size() < coeff_count(d, N)) throw DomainError("basis output buffer too small");
  if (d == 3) {
    solid_harmonics(N, p[0], p[1], p[2], 1.0, out.data());
    return;
  }
  const auto nb = static_cast<std::size_t>((N + 1) * (N + 1));
  thread_local std::vector<double> solid, geg;
  solid.resize(nb);
  geg.resize(static_cast<std::size_t>(N + 1));
  const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  solid_harmonics(N, p[0], p[1], p[2], r2, solid.data());
  const double t = p[3];
  // sum of (k + 1)^2 for k < n
  auto degree_offset = [](int n) { return static_cast<std::size_t>(n * (n + 1) * (2 * n + 1) / 6); };
  for (int j = 0; j <= N; ++j) {
    gegenbauer_orthonormal(N - j, j, t, geg.data());
    for (int n = j; n <= N; ++n) {
      const double g = geg[static_cast<std::size_t>(n - j)];
      const std::size_t base = degree_offset(n) + static_cast<std::size_t>(j * j);
      for (int m = 0; m <= 2 * j; ++m)
        out[base + static_cast<std::size_t>(m)] = g * solid[static_cast<std::size_t>(j * j + m)];
    }
  }
}

double synthesize_at(const HarmonicCoeffs& c, const UnitVector& p) {
  if (p.dim() != c.dim()) throw DomainError("point and coefficients have different dimensions");
  const int N = c.bandlimit();
  const double* coef = c.values().data();
  if (p.dim() == 3) {
    // Same recurrence as solid_harmonics, accumulated on the fly. The loop
    // runs over m innermost so the per-order recurrences advance in lockstep.
    const SolidTable& tab = solid_table(N);
    const double z = p[2];
    thread_local std::vector<double> s1, s2, acc_c, acc_s;
    const auto size = static_cast<std::size_t>(N) + 1;
    s1.assign(size, 0.0);
    s2.assign(size, 0.0);
    acc_c.assign(size, 0.0);
    acc_s.assign(size, 0.0);
    const double* a = tab.a.data();
    const double* b = tab.b.data();
    for (int l = 0; l <= N; ++l) {
      const int row = l * (l + 1) / 2;
      const int base = l * l + l;
      for (int m = 0; m + 1 < l; ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const double sv = a[row + m] * (z * s1[mm] - b[row + m] * s2[mm]);
        s2[mm] = s1[mm];
        s1[mm] = sv;
        acc_c[mm] += sv * coef[base + m];
        acc_s[mm] += sv * coef[base - m];
      }
      if (l >= 1) {
        const auto mm = static_cast<std::size_t>(l - 1);
        const double sv = a[row + l - 1] * z * s1[mm];
        s2[mm] = s1[mm];
        s1[mm] = sv;
        acc_c[mm] += sv * coef[base + l - 1];
        acc_s[mm] += sv * coef[base - l + 1];
      }
      const auto ll = static_cast<std::size_t>(l);
      s1[ll] = tab.kmm[ll];
      acc_c[ll] += s1[ll] * coef[base + l];
      acc_s[ll] += s1[ll] * coef[base - l];
    }
    double re = 1.0, im = 0.0, total = acc_c[0];
    for (int m = 1; m <= N; ++m) {
      const double nre = re * p[0] - im * p[1];
      im = re * p[1] + im * p[0];
      re = nre;
      const auto mm = static_cast<std::size_t>(m);
      total += std::numbers::sqrt2 * (re * acc_c[mm] + im * acc_s[mm]);
    }
    return total;
  }

  thread_local std::vector<double> solid, geg;
  solid.resize(static_cast<std::size_t>((N + 1) * (N + 1)));
  geg.resize(static_cast<std::size_t>(N + 1));
  solid_harmonics(N, p[0], p[1], p[2], p[0] * p[0] + p[1] * p[1] + p[2] * p[2], solid.data());
  double total = 0.0;
  for (int j = 0; j <= N; ++j) {
    gegenbauer_orthonormal(N - j, j, p[3], geg.data());
    for (int m = 0; m <= 2 * j; ++m) {
      double acc = 0.0;
      for (int n = j; n <= N; ++n)
        acc += geg[static_cast<std::size_t>(n - j)] * coef[c.offset(n) + static_cast<std::size_t>(j * j + m)];
      total += acc * solid[static_cast<std::size_t>(j * j + m)];
    }
  }
  return total;
}

SphereFunction interpolant(HarmonicCoeffs c) {
  auto shared = std::make_shared<const HarmonicCoeffs>(std::move(c));
  return [shared](const UnitVector& p) { return synthesize_at(*shared, p); };
}

HarmonicCoeffs analyze(const GridFunction& f, int N) {
  const SphereGrid& grid = f.sphere();
  require_resolved(grid, N);
  HarmonicCoeffs c(grid.dim(), N);
  if (grid.dim() == 3) {
    const auto s2 = analyze_s2(grid, f.values(), N);
    std::copy(s2.begin(), s2.end(), c.values().begin());
    return c;
  }
  const SphereGrid& slice = *grid.slice();
  const std::size_t ring = grid.ring_size();
  std::vector<double> geg(static_cast<std::size_t>(N + 1));
  for (int i = 0; i < grid.L(); ++i) {
    const std::span<const double> ring_values(f.values().data() + static_cast<std::size_t>(i) * ring, ring);
    const auto a = analyze_s2(slice, ring_values, N);
    const double t = grid.latitudes().nodes[static_cast<std::size_t>(i)];
    const double w = grid.latitudes().weights[static_cast<std::size_t>(i)];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    double sj = 1.0;
    for (int j = 0; j <= N; ++j, sj *= s) {
      gegenbauer_orthonormal(N - j, j, t, geg.data());
      for (int n = j; n <= N; ++n) {
        const double factor = w * sj * geg[static_cast<std::size_t>(n - j)];
        auto blk = c.block(n);
        for (int m = 0; m <= 2 * j; ++m)
          blk[static_cast<std::size_t>(j * j + m)] += factor * a[static_cast<std::size_t>(j * j + m)];
      }
    }
  }
  return c;
}

GridFunction synthesize(const HarmonicCoeffs& c, const SphereGridPtr& grid) {
  if (grid->dim() != c.dim()) throw DomainError("grid and coefficients have different dimensions");
  const int N = c.bandlimit();
  std::vector<double> values(grid->size());
  if (grid->dim() == 3) {
    synthesize_s2(*grid, c.values(), N, values);
    return GridFunction(grid, std::move(values));
  }
  const SphereGrid& slice = *grid->slice();
  const std::size_t ring = grid->ring_size();
  std::vector<double> geg(static_cast<std::size_t>(N + 1));
  std::vector<double> b(static_cast<std::size_t>((N + 1) * (N + 1)));
  for (int i = 0; i < grid->L(); ++i) {
    std::fill(b.begin(), b.end(), 0.0);
    const double t = grid->latitudes().nodes[static_cast<std::size_t>(i)];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    double sj = 1.0;
    for (int j = 0; j <= N; ++j, sj *= s) {
      gegenbauer_orthonormal(N - j, j, t, geg.data());
      for (int n = j; n <= N; ++n) {
        const double factor = sj * geg[static_cast<std::size_t>(n - j)];
        const auto blk = c.block(n);
        for (int m = 0; m <= 2 * j; ++m)
          b[static_cast<std::size_t>(j * j + m)] += factor * blk[static_cast<std::size_t>(j * j + m)];
      }
    }
    synthesize_s2(slice, b, N, std::span<double>(values.data() + static_cast<std::size_t>(i) * ring, ring));
  }
  return GridFunction(grid, std::move(values));
}

GridFunction project_degree(const GridFunction& f, int n) {
  const SphereGrid& grid = f.sphere();
  require_resolved(grid, n);
  const int d = grid.dim();
  const double scale = static_cast<double>(dim_harmonic(n, d)) / unit_sphere_measure(d);
  const auto& nodes = grid.nodes();
  const auto& w = grid.weights();
  std::vector<double> out(grid.size());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < nodes.size(); ++j)
        s += w[j] * f[j] * legendre(n, d, std::clamp(nodes[i].dot(nodes[j]), -1.0, 1.0));
      out[i] = scale * s;
    }
  });
  return GridFunction(f.grid(), std::move(out));
}

double sobolev_norm(const HarmonicCoeffs& c, SobolevIndex s) {
  const double shift = 0.5 * (c.dim() - 2);
  double total = 0.0;
  for (int n = 0; n <= c.bandlimit(); ++n) total += std::pow(n + shift, 2.0 * s.value()) * c.degree_energy(n);
  return std::sqrt(total);
}

double funk_eigenvalue(int n, int d) { return legendre(n, d, 0.0); }

HarmonicCoeffs random_harmonic_coeffs(int d, int N, std::uint64_t seed) {
  HarmonicCoeffs c(d, N);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : c.values()) v = normal(rng);
  return c;
}

}  // namespace funksphere
