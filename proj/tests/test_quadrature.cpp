#include <doctest.h>

#include <cmath>
#include <numbers>

#include "funksphere/errors.hpp"
#include "funksphere/harmonics.hpp"
#include "funksphere/quadrature.hpp"
#include "test_support.hpp"

using namespace funksphere;
using testing::random_points;

namespace {

constexpr double kPi = std::numbers::pi;

double integrate(const SphereFunction& f, const SphereGridPtr& grid) { return integrate_sphere(sample(f, grid)); }

// Exact integral of x^a y^b z^c (w^e) over S^{d-1}: 2 prod Gamma((k+1)/2) / Gamma((d + sum k)/2),
// zero when any exponent is odd.
double monomial_integral(const std::vector<int>& k) {
  double num = 2.0;
  int total = 0;
  for (int e : k) {
    if (e % 2 == 1) return 0.0;
    num *= std::tgamma(0.5 * (e + 1));
    total += e;
  }
  return num / std::tgamma(0.5 * (static_cast<int>(k.size()) + total));
}

double monomial(const UnitVector& p, const std::vector<int>& k) {
  double v = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) v *= std::pow(p[static_cast<int>(i)], k[i]);
  return v;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  const Rule1D one = gauss_legendre(1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const Rule1D two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights[0] * two.nodes[0] * two.nodes[0] + two.weights[1] * two.nodes[1] * two.nodes[1] ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(gauss_legendre(0), DomainError);

  for (int n : {3, 7, 20, 64, 129}) {
    const Rule1D r = gauss_legendre(n);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      CHECK(r.weights[i] > 0.0);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    // monomials up to degree 2n - 1
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
}

TEST_CASE("Gauss rule for the weight sqrt(1 - t^2)") {
  for (int n : {1, 4, 9, 33}) {
    const Rule1D r = gauss_chebyshev_u(n);
    // moments of sqrt(1 - t^2): pi/2 * (k-1)!! / (k+2)!! pattern via the Beta function
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact =
          k % 2 == 1 ? 0.0 : std::tgamma(0.5 * (k + 1)) * std::tgamma(1.5) / std::tgamma(0.5 * k + 2.0);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
}

TEST_CASE("sphere grids integrate the measure and low-degree monomials") {
  const auto g = sphere_grid(3, 16, 16);
  CHECK(std::abs(integrate([](const UnitVector&) { return 1.0; }, g) - 4.0 * kPi) <= 1e-12);
  CHECK(std::abs(integrate([](const UnitVector& p) { return p.last(); }, g)) <= 1e-12);
  CHECK(std::abs(integrate([](const UnitVector& p) { return p.last() * p.last(); }, g) - 4.0 * kPi / 3.0) <= 1e-12);
  CHECK(std::abs(integrate([](const UnitVector& p) { return p[0]; }, g)) <= 1e-12);
  CHECK(std::abs(integrate([](const UnitVector& p) { return p.dot(p); }, g) - 4.0 * kPi) <= 1e-12);

  for (int d : {3, 4}) {
    const auto grid = d == 3 ? sphere_grid(3, 9, 18) : sphere_grid(4, 9, 18);
    double wsum = 0.0;
    for (double w : grid->weights()) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum / unit_sphere_measure(d) - 1.0) <= 1e-12);
    CHECK(grid->exact_degree() == 17);
    CHECK(grid->max_bandlimit() == 8);
    // all monomials of total degree <= 17
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    int checked = 0;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == k.size()) {
        const auto kk = k;
        const double q = integrate([&](const UnitVector& p) { return monomial(p, kk); }, grid);
        CHECK(std::abs(q - monomial_integral(kk)) <= 1e-12);
        ++checked;
        return;
      }
      for (int e = 0; e <= left; ++e) {
        k[i] = e;
        rec(i + 1, left - e);
      }
      k[i] = 0;
    };
    rec(0, d == 3 ? 17 : 9);
    CHECK(checked > 100);
  }

  CHECK(unit_sphere_measure(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(unit_sphere_measure(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(sphere_grid(5, 4, 4), DomainError);
  CHECK_THROWS_AS(sphere_grid(3, 1, 4), DomainError);
  CHECK_THROWS_AS(sphere_grid(3, 4, 1), DomainError);
}

TEST_CASE("grid node order is latitude-major and antipodes are found") {
  const auto g = sphere_grid(3, 4, 6);
  REQUIRE(g->size() == 24);
  const auto& lat = g->latitudes().nodes;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const UnitVector& p = g->nodes()[i * 6 + j];
      CHECK(p.last() == doctest::Approx(lat[i]).epsilon(1e-15));
      const double phi = std::atan2(p[1], p[0]);
      const double expected = 2.0 * kPi * static_cast<double>(j) / 6.0;
      CHECK(std::abs(std::remainder(phi - expected, 2.0 * kPi)) <= 1e-12);
    }
  for (int d : {3, 4}) {
    const auto grid = sphere_grid(d, 5, 8);
    for (std::size_t i = 0; i < grid->size(); ++i)
      CHECK(distance(grid->nodes()[grid->antipode(i)], -grid->nodes()[i]) <= 1e-12);
  }
  CHECK_THROWS(sphere_grid(3, 4, 5)->antipode(0));

  const auto g4 = sphere_grid(4, 3, 4);
  REQUIRE(g4->slice());
  CHECK(g4->size() == 3 * 3 * 4);
  CHECK(g4->ring_size() == 12);
}

TEST_CASE("grid functions validate their samples") {
  const auto g = sphere_grid(3, 4, 4);
  CHECK_THROWS(GridFunction(g, std::vector<double>(15, 0.0)));
  std::vector<double> bad(16, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS(GridFunction(g, bad));
  const GridFunction ones(g, std::vector<double>(16, 1.0));
  const GridFunction other(sphere_grid(3, 5, 4), std::vector<double>(20, 1.0));
  CHECK_THROWS(inner_product(ones, other));
  CHECK(inner_product(ones, ones) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}

TEST_CASE("subsphere rules lie on the subsphere and carry its volume") {
  const SubsphereRule eq = subsphere_rule(UnitVector::north_pole(3), ShiftParameter(0.0), 16);
  for (const auto& p : eq.nodes) CHECK(std::abs(p.last()) <= 1e-15);
  const SubsphereRule cap = subsphere_rule(UnitVector::north_pole(3), ShiftParameter(0.5), 16);
  for (const auto& p : cap.nodes) CHECK(std::abs(p.last() - 0.5) <= 1e-15);

  for (int d : {3, 4}) {
    for (double z : {0.0, 0.3, 0.9}) {
      for (const auto& xi : random_points(d, 40, 53)) {
        const SubsphereRule rule = subsphere_rule(xi, ShiftParameter(z), 12);
        double wsum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const UnitVector& p = rule.nodes[i];
          CHECK(std::abs(p.dot(xi) - z * xi.last()) <= 1e-12);
          wsum += rule.weights[i];
        }
        const double r = std::sqrt(1.0 - z * z * xi.last() * xi.last());
        const double volume = d == 3 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
        CHECK(std::abs(wsum - volume) <= 1e-12);
        CHECK(rule.subsphere.volume == doctest::Approx(volume).epsilon(1e-14));
      }
    }
  }
  CHECK_THROWS_AS(subsphere_rule(UnitVector::north_pole(3), ShiftParameter(0.5), 3), DomainError);
  CHECK_THROWS_AS(subsphere_rule(UnitVector::north_pole(3), ShiftParameter(-0.5), 8), DomainError);
}

TEST_CASE("means over subspheres") {
  const SphereFunction one = [](const UnitVector&) { return 1.0; };
  const SphereFunction last = [](const UnitVector& p) { return p.last(); };
  const SphereFunction last2 = [](const UnitVector& p) { return p.last() * p.last(); };
  const UnitVector e1 = UnitVector::axis(3, 0);
  for (const auto& xi : random_points(3, 10, 59)) CHECK(mean_over_subsphere(one, xi, ShiftParameter(0.7), 8) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(mean_over_subsphere(last, e1, ShiftParameter(0.0), 16)) <= 1e-15);
  CHECK(mean_over_subsphere(last2, e1, ShiftParameter(0.0), 16) == doctest::Approx(0.5).epsilon(1e-15));

  // d = 4: mean of eta_4^2 over a great 2-sphere through the pole is 1/3. The
  // graded rule is not polynomial-exact, so it gets a few more nodes.
  CHECK(mean_over_subsphere(last2, UnitVector::axis(4, 0), ShiftParameter(0.0), 32) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("subsphere means of bandlimited functions are exact once m >= 2n + 2") {
  // On C_z^xi a degree-n polynomial is a trigonometric polynomial of degree n.
  for (int n : {2, 5, 8}) {
    const SphereFunction f = interpolant(random_harmonic_coeffs(3, n, static_cast<std::uint64_t>(n)));
    for (const auto& xi : random_points(3, 20, 61)) {
      for (double z : {0.0, 0.6}) {
        const double reference = mean_over_subsphere(f, xi, ShiftParameter(z), 256);
        CHECK(std::abs(mean_over_subsphere(f, xi, ShiftParameter(z), 2 * n + 2) - reference) <= 1e-12);
      }
    }
  }
}

TEST_CASE("great-subsphere means are even in xi") {
  for (int d : {3, 4}) {
    const SphereFunction f = interpolant(random_harmonic_coeffs(d, 5, 3));
    for (const auto& xi : random_points(d, 20, 67))
      CHECK(std::abs(mean_over_subsphere(f, xi, ShiftParameter(0.0), 16) -
                     mean_over_subsphere(f, -xi, ShiftParameter(0.0), 16)) <= 1e-12);
  }
}
