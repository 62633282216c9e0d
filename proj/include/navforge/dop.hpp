#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "navforge/constellation.hpp"

namespace navforge {

inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
inline constexpr double kSingularConditionLimit = 1e12;

struct Geodetic {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double height_m = 0.0;
};

EcefPosition geodetic_to_ecef(const Geodetic& g, double equatorial_radius = 6378137.0);
Geodetic ecef_to_geodetic(const EcefPosition& p, double equatorial_radius = 6378137.0);

/// Elevation of `sat` above the local (ellipsoid-normal) horizon at `user`.
double elevation_deg(const EcefPosition& user, const EcefPosition& sat);

/// Satellites strictly above the elevation mask, in input order.
std::vector<EcefPosition> visible_satellites(const EcefPosition& user,
                                             std::span<const EcefPosition> sats,
                                             double mask_deg = 5.0);

/// Geometry matrix rows (unit line of sight user->satellite, 1).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 4> geometry_matrix(
    const Vector3<Scalar>& user, const std::vector<Vector3<Scalar>>& sats) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 4> g(static_cast<Eigen::Index>(sats.size()), 4);
  for (std::size_t k = 0; k < sats.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    g.template block<1, 3>(row, 0) = (sats[k] - user).normalized().transpose();
    g(row, 3) = Scalar(1);
  }
  return g;
}

/// sqrt(trace of the position block of (G^T G)^-1).
template <typename Scalar>
Scalar pdop(const Vector3<Scalar>& user, const std::vector<Vector3<Scalar>>& sats) {
  if (sats.size() < 4) {
    throw Error(Errc::InsufficientSatellites,
                std::to_string(sats.size()) + " satellites, at least 4 required");
  }
  const auto g = geometry_matrix(user, sats);
  const Eigen::Matrix<Scalar, 4, 4> normal = g.transpose() * g;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 4, 4>> eig(normal,
                                                                       Eigen::EigenvaluesOnly);
  const Scalar lo = eig.eigenvalues().minCoeff();
  const Scalar hi = eig.eigenvalues().maxCoeff();
  if (!(lo > Scalar(0)) || hi / lo > Scalar(kSingularConditionLimit)) {
    throw Error(Errc::SingularGeometry, "geometry matrix is rank deficient");
  }
  const Eigen::Matrix<Scalar, 4, 4> cov =
      normal.llt().solve(Eigen::Matrix<Scalar, 4, 4>::Identity());
  return std::sqrt(cov(0, 0) + cov(1, 1) + cov(2, 2));
}

struct DopResult {
  double t = 0.0;
  int visible_count = 0;
  std::optional<double> pdop;  // empty when the sample failed
};

/// One sample every `step` seconds over [t0, t0 + duration]. The
/// constellation is generated with toe = t0 and propagated per sample;
/// per-sample failures leave pdop empty.
std::vector<DopResult> pdop_series(const ConstellationSpec& spec, const Geodetic& user, double t0,
                                   double duration, double step, double mask_deg = 5.0,
                                   const PhysicalConstantsd& constants = PhysicalConstantsd{});

}  // namespace navforge
