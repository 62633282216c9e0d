#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <random>

#include "navforge/dop.hpp"
#include "oracles.hpp"

using namespace navforge;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::array<double, 3> arr(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

// Satellite at a given azimuth/elevation and range from a user on the
// spherical-earth z axis (north pole), so local up is +z.
Eigen::Vector3d at_az_el(const Eigen::Vector3d& user, double az_deg, double el_deg, double range) {
  const double az = az_deg * kDeg, el = el_deg * kDeg;
  return user + range * Eigen::Vector3d(std::cos(el) * std::sin(az), std::cos(el) * std::cos(az),
                                        std::sin(el));
}

std::vector<Eigen::Vector3d> random_sky(std::mt19937& rng, const Eigen::Vector3d& user, int count) {
  std::uniform_real_distribution<double> az(0, 360), el(10, 90), range(2.0e7, 2.6e7);
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < count; ++i) out.push_back(at_az_el(user, az(rng), el(rng), range(rng)));
  return out;
}

}  // namespace

TEST_CASE("geodetic conversion") {
  const Geodetic g{30.0, 120.0, 150.0};
  const EcefPosition p = geodetic_to_ecef(g);
  const Geodetic back = ecef_to_geodetic(p);
  CHECK(back.lat_deg == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(back.lon_deg == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(back.height_m == doctest::Approx(150.0).epsilon(1e-6));
  CHECK(geodetic_to_ecef(Geodetic{0, 0, 0}).x() == 6378137.0);
  CHECK(geodetic_to_ecef(Geodetic{90, 0, 0}).z() == doctest::Approx(6356752.314245).epsilon(1e-12));
  CHECK(ecef_to_geodetic(geodetic_to_ecef(Geodetic{90, 0, 10})).height_m == doctest::Approx(10.0));
}

TEST_CASE("visible_satellites") {
  const EcefPosition user = geodetic_to_ecef(Geodetic{30, 120, 0});
  const Eigen::Vector3d up = user.normalized();
  const EcefPosition overhead = user + 2.0e7 * geodetic_to_ecef(Geodetic{30, 120, 1}).cwiseProduct(Eigen::Vector3d::Ones()).normalized();
  const EcefPosition antipode = -user * 4.0;
  CHECK(elevation_deg(user, overhead) > 89.0);
  for (double mask : {0.0, 5.0, 45.0, 89.0}) {
    const std::vector<EcefPosition> sats = {overhead, antipode};
    const auto v = visible_satellites(user, sats, mask);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == overhead);
  }
  (void)up;

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> coord(-3e7, 3e7);
  std::vector<EcefPosition> sky;
  for (int i = 0; i < 200; ++i) sky.emplace_back(coord(rng), coord(rng), coord(rng));
  const auto at0 = visible_satellites(user, sky, 0.0);
  const auto at5 = visible_satellites(user, sky, 5.0);
  CHECK(at5.size() <= at0.size());
  for (const auto& s : at5) {
    CHECK(std::find(at0.begin(), at0.end(), s) != at0.end());
  }
}

TEST_CASE("pdop examples") {
  const Eigen::Vector3d user(0, 0, 6378137.0);
  std::vector<Eigen::Vector3d> sats = {at_az_el(user, 0, 90, 2e7), at_az_el(user, 0, 30, 2.2e7),
                                       at_az_el(user, 120, 30, 2.1e7), at_az_el(user, 240, 30, 2.3e7)};
  // exact value 8/3 from the symbolic cofactor inverse
  CHECK(pdop(user, sats) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  std::vector<std::array<double, 3>> raw;
  for (const auto& s : sats) raw.push_back(arr(s));
  CHECK(oracle::pdop(arr(user), raw) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  sats.pop_back();
  CHECK_THROWS_WITH_AS(pdop(user, sats), doctest::Contains("InsufficientSatellites"), Error);

  const std::vector<Eigen::Vector3d> dup(5, at_az_el(user, 10, 50, 2e7));
  CHECK_THROWS_WITH_AS(pdop(user, dup), doctest::Contains("SingularGeometry"), Error);
}

TEST_CASE("pdop properties") {
  std::mt19937 rng(99);
  const Eigen::Vector3d user(0, 0, 6378137.0);
  std::uniform_int_distribution<int> count(4, 12);
  for (int i = 0; i < 100; ++i) {
    const auto sats = random_sky(rng, user, count(rng));
    const double value = pdop(user, sats);

    std::vector<std::array<double, 3>> raw;
    for (const auto& s : sats) raw.push_back(arr(s));
    CHECK(value == doctest::Approx(oracle::pdop(arr(user), raw)).epsilon(1e-9));

    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(0.3 * i, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    std::vector<Eigen::Vector3d> rotated;
    for (const auto& s : sats) rotated.push_back(rot * s);
    CHECK(pdop<double>(rot * user, rotated) == doctest::Approx(value).epsilon(1e-9));

    auto more = sats;
    more.push_back(random_sky(rng, user, 1).front());
    CHECK(pdop(user, more) <= value + 1e-12);
  }
}

TEST_CASE("pdop_series") {
  const ConstellationSpec spec;
  const Geodetic user{30, 120, 0};
  CHECK(pdop_series(spec, user, 0.0, 0.0, 300.0).size() == 1);
  const auto day = pdop_series(spec, user, 0.0, 86400.0, 300.0);
  CHECK(day.size() == 289);
  CHECK(day.back().t == 86400.0);
  CHECK_THROWS_AS(pdop_series(spec, user, 0.0, 100.0, 0.0), Error);

  // a mask above every satellite leaves the samples undefined but present
  const auto none = pdop_series(spec, user, 0.0, 600.0, 300.0, 89.99);
  CHECK(none.size() == 3);
  for (const auto& r : none) CHECK_FALSE(r.pdop.has_value());
}
