#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "navforge/ephemeris.hpp"
#include "navforge/gpstime.hpp"

namespace navforge::rinex {

inline constexpr std::string_view kHeaderEnd = "END OF HEADER";
inline constexpr std::size_t kLinesPerRecord = 8;

/// One GPS navigation record of a RINEX 2 file. af0/af1/af2 are the clock
/// triple (the same quantities as a0/a1/a2 of the clock model).
struct NavRecord {
  int prn = 0;
  CalendarDateTime epoch;
  double af0 = 0, af1 = 0, af2 = 0;
  // broadcast orbit 1
  double iode = 0, crs = 0, deltan = 0, m0 = 0;
  // broadcast orbit 2
  double cuc = 0, e = 0, cus = 0, sqrta = 0;
  // broadcast orbit 3
  double toe = 0, cic = 0, omega0 = 0, cis = 0;
  // broadcast orbit 4
  double i0 = 0, crc = 0, omega = 0, omegadot = 0;
  // broadcast orbit 5
  double idot = 0, codes_l2 = 0, week = 0, l2p_flag = 0;
  // broadcast orbit 6
  double sv_accuracy = 0, sv_health = 0, tgd = 0, iodc = 0;
  // broadcast orbit 7
  double transmission_time = 0, fit_interval = 0, spare1 = 0, spare2 = 0;

  friend bool operator==(const NavRecord&, const NavRecord&) = default;
};

struct NavFile {
  std::vector<std::string> header_lines;  // verbatim, including the END OF HEADER line
  std::vector<NavRecord> records;

  friend bool operator==(const NavFile&, const NavFile&) = default;
};

/// Splits on LF, dropping a trailing CR from each line.
std::vector<std::string> split_lines(std::string_view text);

/// Zero-based index of the first line containing END OF HEADER.
std::size_t find_header_end(const std::vector<std::string>& lines);

/// Parses one 19-column numeric slice. D/d exponents are accepted; blanks
/// around the number are ignored. Throws MissingValue on an all-blank
/// slice and MalformedNumber on anything else unparseable.
double parse_real(std::string_view field);

/// PRN and epoch from the first line of a record (two-digit year windowed
/// at 79: 80..99 -> 19xx, 00..79 -> 20xx).
std::pair<int, CalendarDateTime> parse_epoch(std::string_view line);

NavFile parse_nav_file(std::string_view text);
std::string serialize_nav_file(const NavFile& file);

/// 19-character D-exponent field that parses back to exactly `value`
/// whenever `value` came from a 19-character field.
std::string format_real(double value);

BroadcastEphemerisd to_ephemeris(const NavRecord& record);

/// Continuous GPS seconds of the record's toe, placed in the week of its
/// epoch (adjusted by one week when toe and epoch straddle a rollover).
double toe_gps_seconds(const NavRecord& record);

/// One row per record; columns follow the NavRecord field order.
std::string records_csv(const NavFile& file);

}  // namespace navforge::rinex
