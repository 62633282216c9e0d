#include "navforge/dop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace navforge {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Eigen::Vector3d local_up(const EcefPosition& user) {
  const Geodetic g = ecef_to_geodetic(user);
  const double lat = g.lat_deg * kDeg;
  const double lon = g.lon_deg * kDeg;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

}  // namespace

EcefPosition geodetic_to_ecef(const Geodetic& g, double equatorial_radius) {
  const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
  const double lat = g.lat_deg * kDeg;
  const double lon = g.lon_deg * kDeg;
  const double n = equatorial_radius / std::sqrt(1.0 - e2 * std::sin(lat) * std::sin(lat));
  return {(n + g.height_m) * std::cos(lat) * std::cos(lon),
          (n + g.height_m) * std::cos(lat) * std::sin(lon),
          (n * (1.0 - e2) + g.height_m) * std::sin(lat)};
}

Geodetic ecef_to_geodetic(const EcefPosition& p, double equatorial_radius) {
  const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
  const double rho = std::hypot(p.x(), p.y());
  double lat = std::atan2(p.z(), rho * (1.0 - e2));
  double height = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double s = std::sin(lat);
    const double n = equatorial_radius / std::sqrt(1.0 - e2 * s * s);
    if (std::abs(std::cos(lat)) < 1e-12) {
      height = std::abs(p.z()) - n * (1.0 - e2);
      break;
    }
    height = rho / std::cos(lat) - n;
    lat = std::atan2(p.z(), rho * (1.0 - e2 * n / (n + height)));
  }
  return Geodetic{lat / kDeg, std::atan2(p.y(), p.x()) / kDeg, height};
}

double elevation_deg(const EcefPosition& user, const EcefPosition& sat) {
  const Eigen::Vector3d los = (sat - user).normalized();
  return std::asin(std::clamp(los.dot(local_up(user)), -1.0, 1.0)) / kDeg;
}

std::vector<EcefPosition> visible_satellites(const EcefPosition& user,
                                             std::span<const EcefPosition> sats, double mask_deg) {
  const Eigen::Vector3d up = local_up(user);
  const double sin_mask = std::sin(mask_deg * kDeg);
  std::vector<EcefPosition> out;
  for (const EcefPosition& s : sats) {
    if ((s - user).normalized().dot(up) > sin_mask) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<DopResult> pdop_series(const ConstellationSpec& spec, const Geodetic& user, double t0,
                                   double duration, double step, double mask_deg,
                                   const PhysicalConstantsd& constants) {
  if (!(step > 0.0) || !(duration >= 0.0)) {
    throw Error(Errc::InvalidArgument, "step must be positive and duration non-negative");
  }
  const auto sats = generate_constellation(spec, t0);
  const EcefPosition user_ecef = geodetic_to_ecef(user, constants.earth_radius);
  const auto samples = static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;

  std::vector<DopResult> out;
  out.reserve(samples);
  std::vector<EcefPosition> positions(sats.size());
  for (std::size_t k = 0; k < samples; ++k) {
    DopResult row;
    row.t = t0 + static_cast<double>(k) * step;
    try {
      for (std::size_t s = 0; s < sats.size(); ++s) {
        positions[s] = position_from_elements(sats[s].eph, row.t, constants);
      }
      const auto visible = visible_satellites(user_ecef, positions, mask_deg);
      row.visible_count = static_cast<int>(visible.size());
      row.pdop = pdop<double>(user_ecef, visible);
    } catch (const Error&) {
      row.pdop.reset();
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace navforge
