#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "navforge/error.hpp"
#include "navforge/gpstime.hpp"

namespace navforge {

template <typename Scalar>
struct PhysicalConstants {
  Scalar earth_radius{6378137.0};        // a_e, m
  Scalar j2{108263e-8};                  // second zonal harmonic
  Scalar mu{3.986005e14};                // m^3/s^2
  Scalar earth_rotation{7.2921151467e-5};  // rad/s
};

using PhysicalConstantsd = PhysicalConstants<double>;

/// Reads `key = value` lines (earth_radius, j2, mu, earth_rotation; '#'
/// starts a comment) over the defaults. Throws InvalidArgument.
PhysicalConstantsd load_constants(const std::filesystem::path& path);

/// Defaults, overridden by the file named in NAVFORGE_CONSTANTS if set.
PhysicalConstantsd constants_from_environment();

/// The 16 broadcast parameters. Angles in radians, rates in rad/s.
template <typename Scalar>
struct BroadcastEphemeris {
  Scalar toe{0};
  Scalar a{0};   // semi-major axis, m
  Scalar e{0};
  Scalar i0{0};
  Scalar omega0{0};    // right ascension of the ascending node
  Scalar omega{0};     // argument of perigee
  Scalar m0{0};        // mean anomaly
  Scalar delta_n{0};
  Scalar omega_dot{0};  // broadcast RAAN rate; carried, not used by extrapolate
  Scalar idot{0};
  Scalar cuc{0}, cus{0};
  Scalar crc{0}, crs{0};
  Scalar cic{0}, cis{0};

  friend bool operator==(const BroadcastEphemeris&, const BroadcastEphemeris&) = default;
};

using BroadcastEphemerisd = BroadcastEphemeris<double>;

template <typename Scalar>
struct SecularRates {
  Scalar n{0};          // corrected mean motion n0 + dn
  Scalar raan_rate{0};  // J2 nodal rate
  Scalar perigee_rate{0};
  Scalar anomaly_rate{0};  // J2 term only, excludes n
  Scalar p{0};          // semi-latus rectum
};

enum class HalfWeekPolicy { Warn, Error };

/// Wraps into (-pi, pi]; values already in range are returned unchanged.
template <typename Scalar>
Scalar normalize_angle(Scalar x) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (x > -pi && x <= pi) {
    return x;
  }
  Scalar r = std::remainder(x, Scalar(2) * pi);
  if (r <= -pi) {
    r += Scalar(2) * pi;
  }
  return r;
}

template <typename Scalar>
Scalar mean_motion(Scalar a, Scalar delta_n,
                   const PhysicalConstants<Scalar>& c = PhysicalConstants<Scalar>{}) {
  if (!(a > Scalar(0))) {
    throw Error(Errc::NonPositiveAxis, "semi-major axis must be positive");
  }
  return std::sqrt(c.mu / (a * a * a)) + delta_n;
}

template <typename Scalar>
SecularRates<Scalar> secular_rates(const BroadcastEphemeris<Scalar>& eph,
                                   const PhysicalConstants<Scalar>& c = PhysicalConstants<Scalar>{}) {
  SecularRates<Scalar> r;
  r.n = mean_motion(eph.a, eph.delta_n, c);
  const Scalar one_minus_e2 = Scalar(1) - eph.e * eph.e;
  r.p = eph.a * one_minus_e2;
  const Scalar k = Scalar(1.5) * c.earth_radius * c.earth_radius * c.j2 / (r.p * r.p) * r.n;
  const Scalar sin_i = std::sin(eph.i0);
  const Scalar sin2 = sin_i * sin_i;
  r.raan_rate = -k * std::cos(eph.i0);
  r.perigee_rate = -k * (Scalar(2) - Scalar(2.5) * sin2);
  r.anomaly_rate = -k * (Scalar(-1) + Scalar(1.5) * sin2) * one_minus_e2;
  return r;
}

template <typename Scalar>
bool exceeds_half_week(const BroadcastEphemeris<Scalar>& eph, Scalar t) {
  return std::abs(t - eph.toe) > Scalar(kSecondsPerWeek / 2);
}

/// Secular J2 propagation of the orbital elements from toe to t. The
/// harmonic amplitudes, a and e are carried unchanged.
template <typename Scalar>
BroadcastEphemeris<Scalar> extrapolate(const BroadcastEphemeris<Scalar>& eph, Scalar t,
                                       const PhysicalConstants<Scalar>& c = PhysicalConstants<Scalar>{},
                                       HalfWeekPolicy policy = HalfWeekPolicy::Warn) {
  if (policy == HalfWeekPolicy::Error && exceeds_half_week(eph, t)) {
    throw Error(Errc::HalfWeekExceeded, "extrapolation interval exceeds 302400 s");
  }
  const SecularRates<Scalar> r = secular_rates(eph, c);
  const Scalar dt = t - eph.toe;
  BroadcastEphemeris<Scalar> out = eph;
  out.toe = t;
  out.i0 = normalize_angle(eph.i0 + eph.idot * dt);
  out.omega0 = normalize_angle(eph.omega0 + r.raan_rate * dt);
  out.omega = normalize_angle(eph.omega + r.perigee_rate * dt);
  out.m0 = normalize_angle(eph.m0 + r.n * dt + r.anomaly_rate * dt);
  return out;
}

}  // namespace navforge
