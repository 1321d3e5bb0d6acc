#include <doctest.h>

#include "sara/energy.hpp"
#include "sara/rng.hpp"

using namespace sara;

TEST_SUITE_BEGIN("energy");

TEST_CASE("sensing power") {
  CHECK(sensing_power_mw({1, 0, 3}, 2) == doctest::Approx(8.0));
  CHECK(sensing_power_mw({0, 5, 3}, 1.7) == doctest::Approx(5.0));
  CHECK(sensing_power_mw({1, 5, 3}, 0) == doctest::Approx(0.0));  // unit off
  CHECK_THROWS_AS(sensing_power_mw({1, 0, 3}, -0.1), NegativeRadius);
}

TEST_CASE("sensing power is strictly increasing for a > 0") {
  const SensingModel m{0.5, 1.0, 2.7};
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double r1 = rng.uniform(0.01, 10);
    const double r2 = r1 + rng.uniform(0.001, 3);
    CHECK(sensing_power_mw(m, r2) > sensing_power_mw(m, r1));
  }
}

TEST_CASE("battery drain") {
  Battery b{20, 10};
  const Battery b1 = drain(b, 4.0 / (24.0 * kJoulesPerMwh), 24.0);  // 4 J over the interval
  CHECK(b1.remaining_j == doctest::Approx(6.0));
  CHECK_FALSE(b1.dead());
  const Battery b2 = drain(b, 100, 24.0);
  CHECK(b2.remaining_j == 0.0);
  CHECK(b2.dead());
  const Battery b3 = drain(b, 100, 0.0);
  CHECK(b3.remaining_j == doctest::Approx(10.0));
}

TEST_CASE("energy gains") {
  const SensingModel m{1, 0, 3};
  const double dt = 24.0;
  // Fixed sensor at r = 6: full sensing energy for the interval.
  CHECK(energy_gain_fixed_j(m, 6, dt) == doctest::Approx(216.0 * dt * kJoulesPerMwh));
  // Null / uncovered polygon at r = 4.
  CHECK(energy_gain_adjustable_j(m, 4, std::nullopt, dt) ==
        doctest::Approx(64.0 * dt * kJoulesPerMwh));
  // Shrink from 6 to residual farthest 4.
  CHECK(energy_gain_adjustable_j(m, 6, 4.0, dt) ==
        doctest::Approx((216.0 - 64.0) * dt * kJoulesPerMwh));
  // Residual farthest beyond the radius (partial coverage): no gain.
  CHECK(energy_gain_adjustable_j(m, 4, 9.0, dt) == doctest::Approx(0.0));
  // Gains are never negative.
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform(0, 8);
    const double far = rng.uniform(0, 12);
    CHECK(energy_gain_adjustable_j(m, r, far, dt) >= 0.0);
  }
}

TEST_CASE("mAh conversion") {
  CHECK(joules_from_mah(1840, 3.0) == doctest::Approx(19872.0));
}

TEST_SUITE_END();
