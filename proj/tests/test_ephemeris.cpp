#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "navforge/ephemeris.hpp"

using namespace navforge;

namespace {

constexpr double kPi = std::numbers::pi;

BroadcastEphemerisd gps_like() {
  BroadcastEphemerisd e;
  e.toe = 172800.0;
  e.a = 26560000.0;
  e.e = 0.005;
  e.i0 = 55.0 * kPi / 180.0;
  e.omega0 = 1.2;
  e.omega = 0.4;
  e.m0 = -2.0;
  e.cuc = 1e-6;
  e.cus = -2e-6;
  e.crc = 150.0;
  e.crs = -20.0;
  e.cic = 3e-8;
  e.cis = -4e-8;
  e.omega_dot = -8e-9;
  return e;
}

double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

}  // namespace

TEST_CASE("mean_motion") {
  const double n = mean_motion(26560000.0, 0.0);
  // high-precision evaluation of sqrt(mu / a^3)
  CHECK(n == doctest::Approx(1.458568444402350e-4).epsilon(1e-14));
  CHECK(2.0 * kPi / n == doctest::Approx(43077.75429595).epsilon(1e-11));
  CHECK(mean_motion(26560000.0, 3e-9) - n == doctest::Approx(3e-9).epsilon(1e-6));
  CHECK(n / mean_motion(8 * 26560000.0, 0.0) == doctest::Approx(std::sqrt(512.0)));
  CHECK_THROWS_AS(mean_motion(0.0, 0.0), Error);
  CHECK_THROWS_AS(mean_motion(-1.0, 0.0), Error);
}

TEST_CASE("secular_rates") {
  BroadcastEphemerisd e = gps_like();
  e.delta_n = 0.0;
  const auto r = secular_rates(e);
  // 40-digit reference values of the three secular coefficients
  CHECK(r.raan_rate == doctest::Approx(-7.835066589902511e-9).epsilon(1e-12));
  CHECK(r.perigee_rate == doctest::Approx(-4.405013063201835e-9).epsilon(1e-12));
  CHECK(r.anomaly_rate == doctest::Approx(-8.899428509483999e-11).epsilon(1e-12));
  CHECK(r.raan_rate < 0.0);
  CHECK(r.p == doctest::Approx(26560000.0 * (1 - 0.005 * 0.005)));

  BroadcastEphemerisd polar = gps_like();
  polar.i0 = kPi / 2;
  CHECK(std::abs(secular_rates(polar).raan_rate) < 1e-24);

  BroadcastEphemerisd circular = gps_like();
  circular.e = 0.0;
  CHECK(secular_rates(circular).p == circular.a);
}

TEST_CASE("extrapolate") {
  const BroadcastEphemerisd e = gps_like();

  SUBCASE("identity at zero interval") { CHECK(extrapolate(e, e.toe) == e); }

  SUBCASE("invariant fields") {
    const auto x = extrapolate(e, e.toe + 7777.0);
    CHECK(x.a == e.a);
    CHECK(x.e == e.e);
    CHECK(x.i0 == e.i0);
    CHECK(x.cuc == e.cuc);
    CHECK(x.cus == e.cus);
    CHECK(x.crc == e.crc);
    CHECK(x.crs == e.crs);
    CHECK(x.cic == e.cic);
    CHECK(x.cis == e.cis);
    CHECK(x.omega_dot == e.omega_dot);
    CHECK(x.toe == e.toe + 7777.0);
  }

  SUBCASE("composition") {
    for (double h : {60.0, 600.0, 3600.0}) {
      const auto twice = extrapolate(extrapolate(e, e.toe + h), e.toe + 2 * h);
      const auto direct = extrapolate(e, e.toe + 2 * h);
      CHECK(angle_gap(twice.omega0, direct.omega0) < 1e-12);
      CHECK(angle_gap(twice.omega, direct.omega) < 1e-12);
      CHECK(angle_gap(twice.m0, direct.m0) < 1e-12);
    }
  }

  SUBCASE("node moves linearly at the J2 rate") {
    const double rate = secular_rates(e).raan_rate;
    BroadcastEphemerisd at_zero = e;
    at_zero.omega0 = 0.0;
    for (double h : {60.0, 600.0, 3600.0}) {
      const double exact_slope = extrapolate(at_zero, e.toe + h).omega0 / h;
      CHECK(std::abs(exact_slope - rate) <= 1e-15 * std::abs(rate));
      // with a nonzero starting node the difference quotient is limited by
      // the rounding of the node angle itself
      const double slope = (extrapolate(e, e.toe + h).omega0 - e.omega0) / h;
      CHECK(std::abs(slope - rate) <= 2.0 * std::numeric_limits<double>::epsilon() * 2.0 / h);
    }
  }

  SUBCASE("inclination rate") {
    BroadcastEphemerisd d = e;
    d.idot = 1e-10;
    CHECK(extrapolate(d, d.toe + 1000.0).i0 == doctest::Approx(d.i0 + 1e-7).epsilon(1e-15));
  }

  SUBCASE("angles are normalized") {
    const auto x = extrapolate(e, e.toe + 250000.0);
    for (double v : {x.omega0, x.omega, x.m0}) {
      CHECK(v > -kPi);
      CHECK(v <= kPi);
    }
  }

  SUBCASE("half week") {
    CHECK(exceeds_half_week(e, e.toe + 302401.0));
    CHECK_FALSE(exceeds_half_week(e, e.toe - 302400.0));
    CHECK_NOTHROW(extrapolate(e, e.toe + 400000.0));
    CHECK_THROWS_AS(extrapolate(e, e.toe + 400000.0, PhysicalConstantsd{}, HalfWeekPolicy::Error),
                    Error);
  }
}

TEST_CASE("normalize_angle") {
  CHECK(normalize_angle(kPi) == kPi);
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(normalize_angle(0.25) == 0.25);
}

TEST_CASE("constants override file") {
  const auto path = std::filesystem::temp_directory_path() / "navforge_constants_test.txt";
  {
    std::ofstream f(path);
    f << "# overrides\nmu = 3.986004418e14\n  j2=1.0826e-3  # comment\n";
  }
  const auto c = load_constants(path);
  CHECK(c.mu == 3.986004418e14);
  CHECK(c.j2 == 1.0826e-3);
  CHECK(c.earth_radius == 6378137.0);
  {
    std::ofstream f(path);
    f << "gravity = 9.8\n";
  }
  CHECK_THROWS_AS(load_constants(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_constants(path), Error);
}
