#include "navforge/gpstime.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "navforge/error.hpp"

namespace navforge {
namespace {

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return month == 2 && is_leap_year(year) ? 29 : kDays[static_cast<std::size_t>(month - 1)];
}

std::string describe(const CalendarDateTime& d) { return format_iso_epoch(d); }

}  // namespace

bool is_leap_year(int year) noexcept {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

void validate(const CalendarDateTime& d) {
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month) ||
      d.hour < 0 || d.hour > 23 || d.minute < 0 || d.minute > 59 || !(d.second >= 0.0) ||
      !(d.second < 60.0)) {
    throw Error(Errc::InvalidDate, "invalid calendar date-time " + describe(d));
  }
  const auto key = [](int y, int m, int day) { return (y * 100 + m) * 100 + day; };
  const int k = key(d.year, d.month, d.day);
  if (k < key(1980, 1, 6) || k > key(2099, 12, 28)) {
    throw Error(Errc::DateOutOfRange, describe(d) + " outside [1980-01-06, 2099-12-28]");
  }
}

DayNumber day_number(const CalendarDateTime& date) {
  validate(date);
  const int years = date.year - 1980;
  int leap_days = years / 4 + 1;
  // The current leap year's Feb 29 has not happened yet in Jan/Feb.
  if (years % 4 == 0 && date.month <= 2) {
    --leap_days;
  }
  const std::int64_t d1 = static_cast<std::int64_t>(years) * 365 +
                          kMonthStartDay[static_cast<std::size_t>(date.month - 1)] + date.day +
                          leap_days - 6;
  return DayNumber{d1};
}

GpsSecondsOfWeek seconds_of_week(const CalendarDateTime& date) {
  const DayNumber d1 = day_number(date);
  double t = d1.weekday() * kSecondsPerDay + date.hour * 3600.0 + date.minute * 60.0 + date.second;
  if (t < 0.0) {
    t += kSecondsPerDay;
  }
  return GpsSecondsOfWeek{t};
}

ZCount z_count(GpsSecondsOfWeek t) {
  if (!(t.value >= 0.0) || !(t.value < kSecondsPerWeek)) {
    throw Error(Errc::InvalidArgument,
                "seconds of week " + std::to_string(t.value) + " outside [0, 604800)");
  }
  const auto epochs = static_cast<std::uint32_t>(std::floor(t.value / kZCountPeriod));
  return ZCount{(epochs + 1) % kZCountModulus};
}

double gps_seconds(const CalendarDateTime& date) {
  const DayNumber d1 = day_number(date);
  return static_cast<double>(d1.days) * kSecondsPerDay + date.hour * 3600.0 + date.minute * 60.0 +
         date.second;
}

TimeParameters reference_times(const CalendarDateTime& date, int timezone_hours, TocMode mode) {
  const DayNumber d1 = day_number(date);
  double toc = d1.weekday() * kSecondsPerDay + (date.hour - timezone_hours) * 3600.0 +
               date.minute * 60.0 + date.second;
  if (mode == TocMode::PaperLiteral) {
    toc += 43.0;
  }
  toc = std::fmod(toc, kSecondsPerWeek);
  if (toc < 0.0) {
    toc += kSecondsPerWeek;
  }

  const double scaled = std::floor(toc / 16.0);
  if (scaled >= 65536.0) {
    throw Error(Errc::ScaleOverflow, "toc/16 = " + std::to_string(scaled) + " exceeds 16 bits");
  }
  TimeParameters p;
  p.toc = toc;
  p.toe = toc;
  p.toc_scaled = static_cast<std::uint32_t>(scaled);
  p.toe_scaled = p.toc_scaled;
  p.timezone = timezone_hours;
  return p;
}

DataAges data_ages(double toc, double toe, const ObservationTimes& obs) {
  if (obs.clock_fit_end > toc) {
    throw Error(Errc::NegativeAge, "clock observation time " + std::to_string(obs.clock_fit_end) +
                                       " is after toc " + std::to_string(toc));
  }
  if (obs.ephemeris_fit_end > toe) {
    throw Error(Errc::NegativeAge, "ephemeris observation time " +
                                       std::to_string(obs.ephemeris_fit_end) + " is after toe " +
                                       std::to_string(toe));
  }
  return DataAges{toc - obs.clock_fit_end, toe - obs.ephemeris_fit_end};
}

CalendarDateTime parse_iso_epoch(std::string_view text) {
  const auto fail = [&] {
    return Error(Errc::InvalidDate,
                 "expected YYYY-MM-DDThh:mm:ss, got '" + std::string(text) + "'");
  };
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':') {
    throw fail();
  }
  const auto int_at = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw fail();
    }
    return v;
  };
  CalendarDateTime d;
  d.year = int_at(0, 4);
  d.month = int_at(5, 2);
  d.day = int_at(8, 2);
  d.hour = int_at(11, 2);
  d.minute = int_at(14, 2);
  const std::string_view sec = text.substr(17);
  auto [ptr, ec] = std::from_chars(sec.data(), sec.data() + sec.size(), d.second);
  if (ec != std::errc{} || ptr != sec.data() + sec.size()) {
    throw fail();
  }
  validate(d);
  return d;
}

std::string format_iso_epoch(const CalendarDateTime& d) {
  char buf[64];
  if (d.second == std::floor(d.second)) {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", d.year, d.month, d.day, d.hour,
                  d.minute, static_cast<int>(d.second));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%09.6f", d.year, d.month, d.day,
                  d.hour, d.minute, d.second);
  }
  return buf;
}

}  // namespace navforge
