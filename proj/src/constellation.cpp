#include "navforge/constellation.hpp"

#include <numbers>

namespace navforge {
namespace {

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

void ConstellationSpec::validate() const {
  if (planes < 1 || sats_per_plane < 1 || planes * sats_per_plane != 24) {
    throw Error(Errc::InvalidArgument, "constellation must hold 24 satellites, got " +
                                           std::to_string(planes) + " x " +
                                           std::to_string(sats_per_plane));
  }
  if (!(semi_major_axis > 0.0) || !(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw Error(Errc::InvalidArgument, "invalid semi-major axis or eccentricity");
  }
}

std::vector<Satellite> generate_constellation(const ConstellationSpec& spec, double toe) {
  spec.validate();
  std::vector<Satellite> sats;
  sats.reserve(24);
  int prn = 1;
  for (int p = 0; p < spec.planes; ++p) {
    for (int k = 0; k < spec.sats_per_plane; ++k) {
      Satellite s;
      s.prn = prn++;
      s.eph.toe = toe;
      s.eph.a = spec.semi_major_axis;
      s.eph.e = spec.eccentricity;
      s.eph.i0 = deg2rad(spec.inclination_deg);
      s.eph.omega0 = normalize_angle(deg2rad(p * spec.raan_spacing_deg));
      s.eph.m0 = normalize_angle(
          deg2rad(k * spec.in_plane_spacing_deg + p * spec.phase_offset_per_plane_deg));
      sats.push_back(s);
    }
  }
  return sats;
}

}  // namespace navforge
