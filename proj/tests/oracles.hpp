#pragma once

// Test-only reference computations. None of these call into the library's
// implementation of the quantity they check.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Days from 1980-01-06 using the standard library's civil calendar.
inline std::int64_t days_since_gps_epoch(int y, int m, int d) {
  using namespace std::chrono;
  const sys_days date = year_month_day{year{y}, month{static_cast<unsigned>(m)},
                                       day{static_cast<unsigned>(d)}};
  const sys_days epoch = year_month_day{year{1980}, January, day{6}};
  return (date - epoch).count();
}

/// 0 = Sunday.
inline int weekday(int y, int m, int d) {
  using namespace std::chrono;
  const sys_days date = year_month_day{year{y}, month{static_cast<unsigned>(m)},
                                       day{static_cast<unsigned>(d)}};
  return static_cast<int>(std::chrono::weekday{date}.c_encoding());
}

/// Eccentric anomaly by bisection on [M - e, M + e].
inline double kepler_bisection(double mean_anomaly, double e) {
  double lo = mean_anomaly - e;
  double hi = mean_anomaly + e;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid - e * std::sin(mid) - mean_anomaly > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

using Mat4 = std::array<std::array<double, 4>, 4>;

inline double det3(const Mat4& m, int skip_row, int skip_col) {
  double a[3][3];
  int r = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == skip_row) continue;
    int c = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == skip_col) continue;
      a[r][c++] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    ++r;
  }
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Inverse by the adjugate (cofactor transpose) over the determinant.
inline Mat4 inverse_by_cofactors(const Mat4& m) {
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    det += ((j % 2) ? -1.0 : 1.0) * m[0][static_cast<std::size_t>(j)] * det3(m, 0, j);
  }
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double cof = (((i + j) % 2) ? -1.0 : 1.0) * det3(m, i, j);
      inv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = cof / det;
    }
  }
  return inv;
}

/// PDOP from raw xyz triples via the cofactor inverse.
inline double pdop(const std::array<double, 3>& user, const std::vector<std::array<double, 3>>& sats) {
  Mat4 n{};
  for (const auto& s : sats) {
    const double dx = s[0] - user[0], dy = s[1] - user[1], dz = s[2] - user[2];
    const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double row[4] = {dx / r, dy / r, dz / r, 1.0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += row[i] * row[j];
  }
  const Mat4 q = inverse_by_cofactors(n);
  return std::sqrt(q[0][0] + q[1][1] + q[2][2]);
}

/// Parity bit r as the dot product of the printed H row with the data bits.
inline int parity_bit(const std::array<int, 24>& h_row, std::uint32_t data24) {
  int s = 0;
  for (int c = 0; c < 24; ++c) {
    s ^= h_row[static_cast<std::size_t>(c)] & static_cast<int>((data24 >> (23 - c)) & 1u);
  }
  return s;
}

}  // namespace oracle
