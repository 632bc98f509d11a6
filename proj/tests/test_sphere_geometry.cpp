#include <doctest.h>

#include <cmath>
#include <numbers>

#include "funksphere/errors.hpp"
#include "funksphere/sphere_geometry.hpp"
#include "test_support.hpp"

using namespace funksphere;
using testing::random_points;
using testing::sup_distance;

namespace {

const double kRoot3Half = std::sqrt(3.0) / 2.0;
const double kRoot2Half = std::sqrt(2.0) / 2.0;

}  // namespace

TEST_CASE("unit vectors renormalize near-unit input and reject the rest") {
  const UnitVector u{0.0, 1.5, 0.0};
  CHECK(u[1] == doctest::Approx(1.0).epsilon(1e-15));
  const UnitVector v{1e-3, 1.0, 2e-3, 0.5};
  double n2 = 0.0;
  for (double c : v.coords()) n2 += c * c;
  CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(UnitVector({0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(UnitVector({3.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(UnitVector({0.1, 0.1, 0.1}), DomainError);
  CHECK_THROWS_AS(UnitVector({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(UnitVector::axis(9, 0), DomainError);
  CHECK_THROWS_AS(UnitVector::axis(3, 3), DomainError);
}

TEST_CASE("shift parameters stay strictly inside the ball") {
  CHECK_NOTHROW(ShiftParameter{0.99});
  CHECK_NOTHROW(ShiftParameter(-0.5));
  CHECK_NOTHROW(ShiftParameter{kMaxShift});
  CHECK_THROWS_AS(ShiftParameter(1.0), DomainError);
  CHECK_THROWS_AS(ShiftParameter(-1.0), DomainError);
  CHECK_THROWS_AS(ShiftParameter(std::nan("")), DomainError);
  CHECK_THROWS_AS(require_nonnegative(ShiftParameter(-0.1)), DomainError);
}

TEST_CASE("h_z examples") {
  const UnitVector e1 = UnitVector::axis(3, 0);
  const UnitVector north = UnitVector::north_pole(3);
  for (double z : {-0.7, 0.0, 0.3, 0.9}) {
    CHECK(distance(h_map(north, ShiftParameter(z)), north) <= 1e-15);
    CHECK(distance(h_map(-north, ShiftParameter(z)), -north) <= 1e-15);
    CHECK(distance(h_inv(north, ShiftParameter(z)), north) <= 1e-15);
  }
  for (const auto& p : random_points(4, 20, 1)) CHECK(distance(h_map(p, ShiftParameter(0.0)), p) <= 1e-15);

  CHECK(sup_distance(h_map(e1, ShiftParameter(0.5)), {kRoot3Half, 0.0, 0.5}) <= 1e-15);
  CHECK(distance(h_inv(h_map(e1, ShiftParameter(0.5)), ShiftParameter(0.5)), e1) <= 1e-15);
  CHECK(sup_distance(h_inv(UnitVector{kRoot3Half, 0.0, 0.5}, ShiftParameter(0.5)), {1.0, 0.0, 0.0}) <= 1e-15);
}

TEST_CASE("h_z is a bijection with inverse h_{-z}") {
  for (int d : {3, 4, 6}) {
    for (double z : {-0.9, -0.2, 0.4, 0.95}) {
      const ShiftParameter s(z), minus(-z);
      for (const auto& p : random_points(d, 100, 7)) {
        const UnitVector q = h_map(p, s);
        double n2 = 0.0;
        for (double c : q.coords()) n2 += c * c;
        CHECK(std::abs(n2 - 1.0) <= 1e-12);
        CHECK(distance(h_inv(q, s), p) <= 1e-12);
        CHECK(distance(h_inv(p, s), h_map(p, minus)) <= 1e-15);
      }
    }
  }
}

TEST_CASE("g_z examples") {
  for (double z : {0.1, 0.5, 0.9}) {
    const ShiftParameter s(z);
    CHECK(distance(g_map(UnitVector::axis(3, 0), s), UnitVector::axis(3, 0)) <= 1e-15);
    CHECK(distance(g_map(UnitVector::north_pole(3), s), UnitVector::north_pole(3)) <= 1e-15);
    CHECK(distance(g_inv(UnitVector::north_pole(3), s), UnitVector::north_pole(3)) <= 1e-15);
    CHECK(distance(g_inv(UnitVector::axis(3, 0), s), UnitVector::axis(3, 0)) <= 1e-15);
  }
  // (0, 1/sqrt2, sqrt(3/8)) / sqrt(1 - 1/8) written out
  const UnitVector image = g_map(UnitVector{0.0, kRoot2Half, kRoot2Half}, ShiftParameter(0.5));
  CHECK(sup_distance(image, {0.0, std::sqrt(4.0 / 7.0), std::sqrt(3.0 / 7.0)}) <= 1e-15);
  CHECK(image[1] == doctest::Approx(0.7559289).epsilon(1e-7));
  CHECK(image[2] == doctest::Approx(0.6546537).epsilon(1e-7));
  CHECK(sup_distance(g_inv(image, ShiftParameter(0.5)), {0.0, kRoot2Half, kRoot2Half}) <= 1e-15);

  for (const auto& p : random_points(3, 50, 3)) {
    const double r = std::hypot(p[0], p[1]);
    const UnitVector equatorial{p[0] / r, p[1] / r, 0.0};
    CHECK(distance(g_map(equatorial, ShiftParameter(0.8)), equatorial) <= 1e-15);
  }
}

TEST_CASE("g_z round trip") {
  for (int d : {3, 4, 5}) {
    for (double z : {-0.6, 0.0, 0.5, 0.99}) {
      for (const auto& p : random_points(d, 100, 11)) CHECK(distance(g_inv(g_map(p, ShiftParameter(z)), ShiftParameter(z)), p) <= 1e-12);
    }
  }
}

TEST_CASE("r_z examples and properties") {
  for (const auto& p : random_points(3, 20, 5)) CHECK(distance(r_map(p, ShiftParameter(0.0)), -p) <= 1e-15);
  for (double z : {0.2, 0.9}) {
    const UnitVector north = UnitVector::north_pole(4);
    CHECK(distance(r_map(north, ShiftParameter(z)), -north) <= 1e-15);
  }
  CHECK(sup_distance(r_map(UnitVector::axis(3, 0), ShiftParameter(0.5)), {-0.6, 0.0, 0.8}) <= 1e-15);
  CHECK_THROWS_AS(r_map(UnitVector::axis(3, 0), ShiftParameter(-0.5)), DomainError);

  for (int d : {3, 4}) {
    for (double z : {0.1, 0.5, 0.9}) {
      const ShiftParameter s(z);
      for (const auto& w : random_points(d, 200, 17)) {
        const UnitVector r = r_map(w, s);
        CHECK(distance(r_map(r, s), w) <= 1e-12);
        // w, z e_d and r(w) lie on one chord, on opposite sides of z e_d.
        std::vector<double> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
        double ab = 0.0, aa = 0.0, bb = 0.0;
        for (int i = 0; i < d; ++i) {
          const double shift = i == d - 1 ? z : 0.0;
          a[static_cast<std::size_t>(i)] = w[i] - shift;
          b[static_cast<std::size_t>(i)] = r[i] - shift;
          ab += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
          aa += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
          bb += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
        }
        CHECK(std::abs(std::sqrt(aa * bb) + ab) <= 1e-12 * std::max(1.0, std::sqrt(aa * bb)));
        CHECK(std::abs(reflection_weight(w, s) * reflection_weight(r, s) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("stereographic projection examples") {
  const Vector a = stereo(UnitVector::axis(3, 0));
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 0.0);
  const Vector b = stereo(-UnitVector::north_pole(3));
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 0.0);
  const Vector c = stereo(UnitVector{0.0, kRoot3Half, 0.5});
  CHECK(std::abs(c[0]) <= 1e-15);
  CHECK(c[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(stereo(UnitVector::north_pole(3)), PoleError);

  const std::vector<double> origin{0.0, 0.0};
  CHECK(distance(stereo_inv(origin), -UnitVector::north_pole(3)) <= 1e-15);
  const std::vector<double> unit{1.0, 0.0};
  CHECK(distance(stereo_inv(unit), UnitVector::axis(3, 0)) <= 1e-15);
  const std::vector<double> root3{0.0, std::sqrt(3.0)};
  CHECK(sup_distance(stereo_inv(root3), {0.0, kRoot3Half, 0.5}) <= 1e-15);

  for (int d : {3, 4}) {
    for (const auto& p : random_points(d, 200, 23)) {
      const Vector x = stereo(p);
      CHECK(distance(stereo_inv(x), p) <= 1e-12);
    }
  }
  const std::vector<double> far{1e6, 0.0};
  CHECK(stereo_inv(far).last() < 1.0);
}

TEST_CASE("h_z acts as a uniform scaling in stereographic coordinates") {
  for (double z : {-0.5, 0.1, 0.5, 0.9}) {
    const double factor = std::sqrt((1.0 + z) / (1.0 - z));
    for (const auto& p : random_points(3, 200, 29)) {
      const Vector lhs = stereo(h_map(p, ShiftParameter(z)));
      const Vector rhs = stereo(p);
      double err = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        err = std::max(err, std::abs(lhs[i] - factor * rhs[i]));
        norm = std::max(norm, std::abs(lhs[i]));
      }
      CHECK(err <= 1e-12 * std::max(1.0, norm));
    }
  }
}

TEST_CASE("subsphere descriptors") {
  const Subsphere great = subsphere(UnitVector::axis(3, 0), ShiftParameter(0.7));
  CHECK(great.radius == 1.0);
  CHECK(great.volume == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  for (double c : great.center) CHECK(c == 0.0);

  const Subsphere cap = subsphere(UnitVector::north_pole(3), ShiftParameter(0.5));
  CHECK(cap.center[0] == 0.0);
  CHECK(cap.center[1] == 0.0);
  CHECK(cap.center[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cap.radius == doctest::Approx(0.8660254).epsilon(1e-7));
  CHECK(cap.volume == doctest::Approx(2.0 * std::numbers::pi * std::sqrt(0.75)).epsilon(1e-14));

  for (const auto& p : random_points(3, 20, 31))
    CHECK(subsphere(p, ShiftParameter(0.0)).volume == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));

  // d = 4: |S^2| r^2
  const Subsphere s4 = subsphere(UnitVector{0.0, 0.0, 0.6, 0.8}, ShiftParameter(0.5));
  const double r2 = 1.0 - 0.25 * 0.64;
  CHECK(s4.radius == doctest::Approx(std::sqrt(r2)).epsilon(1e-15));
  CHECK(s4.volume == doctest::Approx(4.0 * std::numbers::pi * r2).epsilon(1e-14));

  for (int d : {3, 4}) {
    for (double z : {0.2, 0.6, 0.95}) {
      for (const auto& p : random_points(d, 100, 37)) {
        const Subsphere sub = subsphere(p, ShiftParameter(z));
        CHECK(sub.radius > 0.0);
        CHECK(sub.radius <= 1.0);
        double dist2 = 0.0, norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
          const double c = sub.center[static_cast<std::size_t>(i)];
          norm2 += c * c;
          const double off = c - (i == d - 1 ? z / 2.0 : 0.0);
          dist2 += off * off;
        }
        CHECK(std::abs(std::sqrt(norm2) - std::abs(z * p.last())) <= 1e-15);
        CHECK(std::abs(std::sqrt(dist2) - z / 2.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("tangent frames are orthonormal and positively oriented") {
  const TangentFrame north = tangent_frame(UnitVector::north_pole(3));
  for (const auto& e : north.basis) CHECK(std::abs(e[2]) <= 1e-15);
  std::vector<Vector> cols{UnitVector::north_pole(3).to_vector(), north.basis[0], north.basis[1]};
  CHECK(determinant(cols) > 0.0);

  for (int d : {3, 4, 5}) {
    for (const auto& p : random_points(d, 100, 41)) {
      const TangentFrame f = tangent_frame(p);
      REQUIRE(f.basis.size() == static_cast<std::size_t>(d - 1));
      std::vector<Vector> columns{p.to_vector()};
      for (std::size_t a = 0; a < f.basis.size(); ++a) {
        double along = 0.0;
        for (int i = 0; i < d; ++i) along += f.basis[a][static_cast<std::size_t>(i)] * p[i];
        CHECK(std::abs(along) <= 1e-12);
        for (std::size_t b = 0; b < f.basis.size(); ++b) {
          double g = 0.0;
          for (int i = 0; i < d; ++i) g += f.basis[a][static_cast<std::size_t>(i)] * f.basis[b][static_cast<std::size_t>(i)];
          CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) <= 1e-12);
        }
        columns.push_back(f.basis[a]);
      }
      CHECK(std::abs(determinant(columns) - 1.0) <= 1e-12);
      // deterministic
      const TangentFrame again = tangent_frame(p);
      CHECK(again.basis == f.basis);
    }
  }
}

TEST_CASE("h_z pulls the volume form back by a conformal factor") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> zdist(-0.9, 0.9);
  for (int d : {3, 4}) {
    for (int i = 0; i < 100; ++i) {
      const UnitVector eta = random_unit_vector(d, rng);
      const double z = zdist(rng);
      CHECK(pullback_residual(eta, ShiftParameter(z), 1e-5) <= 1e-6);
      CHECK(h_stretch(eta, ShiftParameter(z)) ==
            doctest::Approx(std::sqrt(1.0 - z * z) / (1.0 + z * eta.last())).epsilon(1e-15));
    }
  }
}

TEST_CASE("g_z maps great subspheres onto shifted subspheres through h_z") {
  // Points p orthogonal to g_z(xi) are sent by h_z onto C_z^xi.
  for (double z : {0.0, 0.4, 0.8}) {
    const ShiftParameter s(z);
    for (const auto& xi : random_points(3, 50, 47)) {
      const UnitVector normal = g_map(xi, s);
      const TangentFrame frame = tangent_frame(normal);
      for (int k = 0; k < 12; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 12.0;
        std::vector<double> p(3);
        for (std::size_t i = 0; i < 3; ++i) p[i] = std::cos(t) * frame.basis[0][i] + std::sin(t) * frame.basis[1][i];
        CHECK(std::abs(h_map(UnitVector(p), s).dot(xi) - z * xi.last()) <= 1e-12);
      }
    }
  }
}
