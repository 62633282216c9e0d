#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "navforge/ephemeris.hpp"

namespace navforge {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

using EcefPosition = Eigen::Vector3d;

/// Nominal Walker-style layout: planes spaced in RAAN, satellites evenly
/// spaced within each plane and staggered from plane to plane.
struct ConstellationSpec {
  int planes = 6;
  int sats_per_plane = 4;
  double raan_spacing_deg = 60.0;
  double inclination_deg = 55.0;
  double semi_major_axis = 26560000.0;
  double eccentricity = 0.005;
  double in_plane_spacing_deg = 90.0;
  double phase_offset_per_plane_deg = 15.0;

  /// Throws InvalidArgument unless planes * sats_per_plane == 24 and the
  /// orbit is a valid ellipse.
  void validate() const;
};

struct Satellite {
  int prn = 0;
  BroadcastEphemerisd eph;
};

/// Satellites in (plane, slot) order with PRNs 1..24; all perturbation
/// terms zero.
std::vector<Satellite> generate_constellation(const ConstellationSpec& spec, double toe);

enum class ReferenceFrame {
  EarthFixed,
  Inertial,  // node longitude without the earth rotation term
};

/// Eccentric anomaly from Kepler's equation by Newton iteration started at
/// E = M. Throws NoConvergence after 30 iterations.
template <typename Scalar>
Scalar kepler_solve(Scalar mean_anomaly, Scalar e) {
  if (!(e >= Scalar(0) && e < Scalar(1))) {
    throw Error(Errc::InvalidArgument, "eccentricity outside [0, 1)");
  }
  Scalar ecc_anomaly = mean_anomaly;
  for (int iter = 0; iter <= 30; ++iter) {
    const Scalar residual = ecc_anomaly - e * std::sin(ecc_anomaly) - mean_anomaly;
    if (std::abs(residual) < Scalar(1e-12)) {
      return ecc_anomaly;
    }
    if (iter == 30) {
      break;
    }
    ecc_anomaly -= residual / (Scalar(1) - e * std::cos(ecc_anomaly));
  }
  throw Error(Errc::NoConvergence, "Kepler iteration did not converge");
}

/// Position at t from broadcast elements: secular extrapolation to t,
/// Kepler solve, second-harmonic corrections, then rotation by inclination
/// and node longitude.
template <typename Scalar>
Vector3<Scalar> position_from_elements(const BroadcastEphemeris<Scalar>& eph, Scalar t,
                                       const PhysicalConstants<Scalar>& c = PhysicalConstants<Scalar>{},
                                       ReferenceFrame frame = ReferenceFrame::EarthFixed) {
  const BroadcastEphemeris<Scalar> at = extrapolate(eph, t, c);
  const Scalar e = at.e;
  const Scalar ecc_anomaly = kepler_solve(at.m0, e);
  const Scalar true_anomaly =
      std::atan2(std::sqrt(Scalar(1) - e * e) * std::sin(ecc_anomaly), std::cos(ecc_anomaly) - e);
  const Scalar phi = true_anomaly + at.omega;
  const Scalar s2 = std::sin(Scalar(2) * phi);
  const Scalar c2 = std::cos(Scalar(2) * phi);

  const Scalar u = phi + at.cus * s2 + at.cuc * c2;
  const Scalar r = at.a * (Scalar(1) - e * std::cos(ecc_anomaly)) + at.crs * s2 + at.crc * c2;
  const Scalar incl = at.i0 + at.cis * s2 + at.cic * c2;

  const Scalar xp = r * std::cos(u);
  const Scalar yp = r * std::sin(u);
  Scalar node = at.omega0;
  if (frame == ReferenceFrame::EarthFixed) {
    node -= c.earth_rotation * t;
  }
  const Scalar cn = std::cos(node);
  const Scalar sn = std::sin(node);
  const Scalar ci = std::cos(incl);
  return Vector3<Scalar>(xp * cn - yp * ci * sn, xp * sn + yp * ci * cn, yp * std::sin(incl));
}

}  // namespace navforge
