#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace navforge {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerWeek = 604800.0;
inline constexpr std::uint32_t kZCountModulus = 100800;
inline constexpr double kZCountPeriod = 6.0;

// Cumulative day count at the start of each month of a non-leap year.
inline constexpr std::array<int, 12> kMonthStartDay = {0,   31,  59,  90,  120, 151,
                                                       181, 212, 243, 273, 304, 334};

struct CalendarDateTime {
  int year = 1980;
  int month = 1;
  int day = 6;
  int hour = 0;
  int minute = 0;
  double second = 0.0;

  friend bool operator==(const CalendarDateTime&, const CalendarDateTime&) = default;
};

/// Whole days elapsed since the GPS epoch, 1980-01-06 (a Sunday).
struct DayNumber {
  std::int64_t days = 0;

  int weekday() const noexcept { return static_cast<int>(days % 7); }
  std::int64_t week() const noexcept { return days / 7; }
  friend auto operator<=>(const DayNumber&, const DayNumber&) = default;
};

struct GpsSecondsOfWeek {
  double value = 0.0;
  friend auto operator<=>(const GpsSecondsOfWeek&, const GpsSecondsOfWeek&) = default;
};

/// Count of 6 s epochs within the GPS week, in [0, 100799].
struct ZCount {
  std::uint32_t value = 0;
  friend auto operator<=>(const ZCount&, const ZCount&) = default;
};

enum class TocMode {
  Standard,
  PaperLiteral,  // adds the constant 43 s offset to toc/toe
};

struct TimeParameters {
  double toc = 0.0;
  double toe = 0.0;
  std::uint32_t toc_scaled = 0;
  std::uint32_t toe_scaled = 0;
  double iodc = 0.0;
  double iode = 0.0;
  int timezone = 0;
};

/// Final observation times of the clock fit (t_L) and ephemeris fit (t_l).
struct ObservationTimes {
  double clock_fit_end = 0.0;
  double ephemeris_fit_end = 0.0;
};

struct DataAges {
  double iodc = 0.0;
  double iode = 0.0;
};

bool is_leap_year(int year) noexcept;

// Throws InvalidDate for malformed fields and DateOutOfRange outside
// [1980-01-06, 2099-12-28]; the 4-year leap rule used below breaks in 2100.
void validate(const CalendarDateTime& date);

DayNumber day_number(const CalendarDateTime& date);
GpsSecondsOfWeek seconds_of_week(const CalendarDateTime& date);
ZCount z_count(GpsSecondsOfWeek t);

/// Continuous GPS time in seconds since the GPS epoch (no week wrap).
double gps_seconds(const CalendarDateTime& date);

/// toc == toe from a local civil time. The result is wrapped into the
/// GPS week when the timezone shift crosses a week boundary.
TimeParameters reference_times(const CalendarDateTime& date, int timezone_hours,
                               TocMode mode = TocMode::Standard);

DataAges data_ages(double toc, double toe, const ObservationTimes& obs);

/// Parses "YYYY-MM-DDThh:mm:ss[.fff]" and validates the result.
CalendarDateTime parse_iso_epoch(std::string_view text);
std::string format_iso_epoch(const CalendarDateTime& date);

}  // namespace navforge
