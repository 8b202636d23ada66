#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acqf/bloch.hpp"
#include "acqf/rng.hpp"
#include "oracles.hpp"

using namespace acqf;

namespace {

Direction3 random_direction(Rng& rng) {
  // Gaussian-free: uniform on the sphere via z and azimuth.
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double r = std::sqrt(1.0 - z * z);
  return Direction3(r * std::cos(phi), r * std::sin(phi), z);
}

// Rotation about an arbitrary axis (Rodrigues).
Direction3 rotate(const Direction3& v, const Direction3& k, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), kv = k.dot(v);
  const double cx = k.y() * v.z() - k.z() * v.y();
  const double cy = k.z() * v.x() - k.x() * v.z();
  const double cz = k.x() * v.y() - k.y() * v.x();
  return Direction3(v.x() * c + cx * s + k.x() * kv * (1 - c), v.y() * c + cy * s + k.y() * kv * (1 - c),
                    v.z() * c + cz * s + k.z() * kv * (1 - c));
}

}  // namespace

TEST_CASE("Direction3 normalizes and rejects zero vectors") {
  const Direction3 d(3.0, 0.0, 4.0);
  CHECK(d.x() == doctest::Approx(0.6));
  CHECK(d.z() == doctest::Approx(0.8));
  CHECK(std::abs(d.dot(d) - 1.0) < kUnitNormTolerance);
  CHECK_THROWS_AS(Direction3(0.0, 0.0, 0.0), InvalidDirection);
  CHECK_THROWS_AS(Direction3(1e-20, 0.0, 0.0), InvalidDirection);
  CHECK_THROWS_AS(Direction3(NAN, 0.0, 1.0), InvalidDirection);
}

TEST_CASE("Frame rejects non-orthogonal and left-handed triples") {
  CHECK_NOTHROW(Frame(kAxisX, kAxisY, kAxisZ, {"x", "y", "z"}));
  CHECK_THROWS_AS(Frame(kAxisX, Direction3(1, 1, 0), kAxisZ, {"a", "b", "c"}), InvalidFrame);
  CHECK_THROWS_AS(Frame(kAxisY, kAxisX, kAxisZ, {"a", "b", "c"}), InvalidFrame);
  CHECK_THROWS_AS(Frame(kAxisX, kAxisY, kAxisZ, {"a", "a", "c"}), InvalidFrame);
}

TEST_CASE("born_probability examples") {
  auto eig = born_probability(kAxisX, kAxisX);
  CHECK(eig.p_plus == 1.0);
  CHECK(eig.p_minus == 0.0);

  auto orth = born_probability(kAxisY, kAxisX);
  CHECK(orth.p_plus == 0.5);
  CHECK(orth.p_minus == 0.5);

  const Frame ready = default_ready_frame();
  auto a = born_probability(ready.axis(0), kAxisX);
  CHECK(a.p_plus == doctest::Approx(0.8535533905932737).epsilon(1e-14));
  const auto o = oracle::spinor_born({ready.axis(0).x(), ready.axis(0).y(), ready.axis(0).z()},
                                     {1.0, 0.0, 0.0});
  CHECK(std::abs(a.p_plus - o[0]) < 1e-12);
  CHECK(std::abs(a.p_minus - o[1]) < 1e-12);
}

TEST_CASE("born_probability properties on random pairs") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto u = random_direction(rng);
    const auto v = random_direction(rng);
    const auto b = born_probability(u, v);
    REQUIRE(b.p_plus + b.p_minus == 1.0);
    REQUIRE(b.p_plus >= 0.0);
    REQUIRE(b.p_plus <= 1.0);

    const auto swapped = born_probability(v, u);
    REQUIRE(swapped.p_plus == b.p_plus);

    REQUIRE(std::abs(born_probability(-u, v).p_plus - b.p_minus) < 1e-15);

    const auto k = random_direction(rng);
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const auto rotated = born_probability(rotate(u, k, angle), rotate(v, k, angle));
    REQUIRE(std::abs(rotated.p_plus - b.p_plus) < 1e-12);

    const auto o = oracle::spinor_born({u.x(), u.y(), u.z()}, {v.x(), v.y(), v.z()});
    REQUIRE(std::abs(b.p_plus - o[0]) < 1e-12);
  }
}

TEST_CASE("sample_outcome") {
  CHECK(sample_outcome(0.8536, 0.5) == Outcome::Plus);
  CHECK(sample_outcome(0.0, 0.0) == Outcome::Minus);
  CHECK(sample_outcome(0.0, 0.7) == Outcome::Minus);
  CHECK(sample_outcome(1.0, 0.999999) == Outcome::Plus);

  Rng rng(12345);
  const double p = 0.853553;
  int plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) plus += sample_outcome(p, rng.uniform()) == Outcome::Plus;
  CHECK(std::abs(static_cast<double>(plus) / n - p) < 0.01);
}

TEST_CASE("collapse") {
  CHECK(collapse(kAxisX, Outcome::Plus) == kAxisX);
  const auto m = collapse(kAxisX, Outcome::Minus);
  CHECK(m.x() == -1.0);
  CHECK(m.y() == 0.0);

  const auto gamma = default_ready_frame().axis(2);
  const auto g = collapse(gamma, Outcome::Minus);
  CHECK(g.x() == doctest::Approx(0.0));
  CHECK(g.y() == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(g.z() == doctest::Approx(-0.70711).epsilon(1e-5));
}

TEST_CASE("make_ready_frame") {
  CHECK_THROWS_AS(make_ready_frame(0.0, 0.0), DegenerateFrame);
  CHECK_THROWS_AS(make_ready_frame(std::numbers::pi / 2, 0.0), DegenerateFrame);

  const double s = std::sqrt(0.5);
  const Frame f = make_ready_frame(std::numbers::pi / 4, std::numbers::pi / 4);
  const double expected[3][3] = {{s, 0.5, 0.5}, {-s, 0.5, 0.5}, {0.0, -s, s}};
  for (int i = 0; i < 3; ++i) {
    CHECK(f.axis(i).x() == doctest::Approx(expected[i][0]).epsilon(1e-12));
    CHECK(f.axis(i).y() == doctest::Approx(expected[i][1]).epsilon(1e-12));
    CHECK(f.axis(i).z() == doctest::Approx(expected[i][2]).epsilon(1e-12));
  }
  CHECK(f.label(0) == "alpha");
  CHECK(f.label(2) == "gamma");

  // Any non-degenerate angle pair yields an orthonormal right-handed frame.
  Rng rng(99);
  int built = 0;
  for (int i = 0; i < 5000; ++i) {
    const double yaw = 2 * std::numbers::pi * rng.uniform();
    const double pitch = 2 * std::numbers::pi * rng.uniform();
    try {
      const Frame r = make_ready_frame(yaw, pitch);
      ++built;
      REQUIRE(std::abs(r.axis(0).dot(r.axis(1))) < kOrthogonalityTolerance);
      REQUIRE(std::abs(r.axis(0).dot(r.axis(2))) < kOrthogonalityTolerance);
      REQUIRE(std::abs(r.axis(1).dot(r.axis(2))) < kOrthogonalityTolerance);
      REQUIRE(r.axis(0).cross(r.axis(1)).dot(r.axis(2)) > 0.0);
      REQUIRE(max_lab_alignment(r) <= 1.0 - kFrameDegeneracyTolerance);
    } catch (const DegenerateFrame&) {
    }
  }
  CHECK(built > 4900);
}
