#include "navforge/rinex.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "navforge/csv.hpp"

namespace navforge::rinex {
namespace {

constexpr std::size_t kFieldWidth = 19;
constexpr std::array<std::size_t, 4> kFieldStart = {3, 22, 41, 60};  // zero-based

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Columns past the end of a short line read as blanks.
std::string_view slice(std::string_view line, std::size_t start, std::size_t len) {
  if (start >= line.size()) {
    return {};
  }
  return line.substr(start, len);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::MalformedEpoch, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

using Orbit = std::array<double*, 4>;

std::array<Orbit, 7> orbit_fields(NavRecord& r) {
  return {{{&r.iode, &r.crs, &r.deltan, &r.m0},
           {&r.cuc, &r.e, &r.cus, &r.sqrta},
           {&r.toe, &r.cic, &r.omega0, &r.cis},
           {&r.i0, &r.crc, &r.omega, &r.omegadot},
           {&r.idot, &r.codes_l2, &r.week, &r.l2p_flag},
           {&r.sv_accuracy, &r.sv_health, &r.tgd, &r.iodc},
           {&r.transmission_time, &r.fit_interval, &r.spare1, &r.spare2}}};
}

// Fit interval and the two trailing spares are often left blank.
bool is_spare_slot(std::size_t orbit_line, std::size_t slot) { return orbit_line == 6 && slot >= 1; }

double parse_slot(std::string_view line, std::size_t line_no, std::size_t slot, bool spare) {
  const std::size_t start = kFieldStart[slot];
  try {
    return parse_real(slice(line, start, kFieldWidth));
  } catch (const Error& e) {
    if (spare && e.code() == Errc::MissingValue) {
      return 0.0;
    }
    throw ParseError(e.code(), line_no, start + 1, e.what());
  }
}

std::string join_fields(std::string prefix, double a, double b, double c) {
  return prefix + format_real(a) + format_real(b) + format_real(c);
}

}  // namespace

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::size_t find_header_end(const std::vector<std::string>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find(kHeaderEnd) != std::string::npos) {
      return i;
    }
  }
  throw Error(Errc::MissingHeaderEnd, "no line contains 'END OF HEADER'");
}

double parse_real(std::string_view field) {
  std::string_view s = trim(field);
  if (s.empty()) {
    throw Error(Errc::MissingValue, "blank numeric field");
  }
  std::string buf(s);
  for (char& c : buf) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  std::string_view v = buf;
  if (v.front() == '+') v.remove_prefix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw Error(Errc::MalformedNumber, "cannot parse '" + std::string(s) + "' as a number");
  }
  return out;
}

std::pair<int, CalendarDateTime> parse_epoch(std::string_view line) {
  if (line.size() < 22) {
    throw Error(Errc::MalformedEpoch, "epoch line shorter than 22 columns");
  }
  const int prn = parse_int(line.substr(0, 2));
  const int yy = parse_int(line.substr(2, 4));
  CalendarDateTime d;
  d.year = yy > 79 ? 1900 + yy : 2000 + yy;
  d.month = parse_int(line.substr(6, 3));
  d.day = parse_int(line.substr(9, 3));
  d.hour = parse_int(line.substr(12, 3));
  d.minute = parse_int(line.substr(15, 3));
  try {
    d.second = parse_real(line.substr(18, 4));
    validate(d);
  } catch (const Error& e) {
    throw Error(Errc::MalformedEpoch, e.what());
  }
  return {prn, d};
}

NavFile parse_nav_file(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  const std::size_t header_end = find_header_end(lines);

  NavFile file;
  file.header_lines.assign(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(header_end + 1));

  std::size_t body_end = lines.size();
  while (body_end > header_end + 1 && trim(lines[body_end - 1]).empty()) {
    --body_end;
  }
  const std::size_t body_begin = header_end + 1;
  const std::size_t body_lines = body_end - body_begin;
  if (body_lines % kLinesPerRecord != 0) {
    const std::size_t partial = body_begin + body_lines / kLinesPerRecord * kLinesPerRecord;
    throw ParseError(Errc::TruncatedRecord, partial + 1, 0,
                     std::to_string(body_lines) + " body lines is not a multiple of 8");
  }

  for (std::size_t first = body_begin; first < body_end; first += kLinesPerRecord) {
    NavRecord r;
    const std::string& epoch_line = lines[first];
    try {
      std::tie(r.prn, r.epoch) = parse_epoch(epoch_line);
    } catch (const Error& e) {
      throw ParseError(e.code(), first + 1, 0, e.what());
    }
    r.af0 = parse_slot(epoch_line, first + 1, 1, false);
    r.af1 = parse_slot(epoch_line, first + 1, 2, false);
    r.af2 = parse_slot(epoch_line, first + 1, 3, false);

    const auto orbits = orbit_fields(r);
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      const std::size_t idx = first + 1 + k;
      if (!trim(slice(lines[idx], 0, kFieldStart[0])).empty()) {
        throw ParseError(Errc::MalformedNumber, idx + 1, 1, "columns 1-3 of an orbit line must be blank");
      }
      for (std::size_t slot = 0; slot < 4; ++slot) {
        *orbits[k][slot] = parse_slot(lines[idx], idx + 1, slot, is_spare_slot(k, slot));
      }
    }
    if (!(r.e >= 0.0 && r.e < 1.0)) {
      throw ParseError(Errc::InvalidRecord, first + 3, kFieldStart[1] + 1,
                       "eccentricity outside [0, 1)");
    }
    if (!(r.sqrta > 0.0)) {
      throw ParseError(Errc::InvalidRecord, first + 3, kFieldStart[3] + 1,
                       "sqrt(a) must be positive");
    }
    file.records.push_back(r);
  }
  return file;
}

std::string format_real(double value) {
  char buf[64];
  const auto fits = [&](std::string s) -> std::string {
    if (s.size() > kFieldWidth) return {};
    return std::string(kFieldWidth - s.size(), ' ') + s;
  };
  const auto round_trips = [&](const std::string& s) {
    try {
      return !s.empty() && parse_real(s) == value;
    } catch (const Error&) {
      return false;
    }
  };

  // Conventional 0.dddddddddddd D+ee layout.
  std::string conventional;
  std::snprintf(buf, sizeof buf, "%.11e", value);
  {
    std::string_view sci = buf;
    const bool negative = sci.front() == '-';
    if (negative) sci.remove_prefix(1);
    const std::size_t e_pos = sci.find('e');
    std::string digits;
    digits += sci[0];
    digits += sci.substr(2, e_pos - 2);
    int exponent = 0;
    std::from_chars(sci.data() + e_pos + 1 + (sci[e_pos + 1] == '+'), sci.data() + sci.size(),
                    exponent);
    exponent = value == 0.0 ? 0 : exponent + 1;
    if (exponent > -100 && exponent < 100) {
      char exp_buf[8];
      std::snprintf(exp_buf, sizeof exp_buf, "D%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
      conventional = fits(std::string(negative ? "-" : " ") + "0." + digits + exp_buf);
    }
  }
  if (round_trips(conventional)) {
    return conventional;
  }
  for (int precision = 12; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*E", precision - 1, value);
    std::string s = buf;
    const auto pos = s.find('E');
    s[pos] = 'D';
    if (const std::string plain = fits(s); round_trips(plain)) {
      return plain;
    }
    // Integer mantissa without the decimal point: one more digit fits.
    int exponent = 0;
    std::from_chars(s.data() + pos + 1 + (s[pos + 1] == '+'), s.data() + s.size(), exponent);
    std::string mantissa = s.substr(0, pos);
    mantissa.erase(mantissa.find('.'), 1);
    std::snprintf(buf, sizeof buf, "D%+03d", exponent - (precision - 1));
    if (const std::string packed = fits(mantissa + buf); round_trips(packed)) {
      return packed;
    }
  }
  return conventional.empty() ? fits("0.000000000000D+00") : conventional;
}

std::string serialize_nav_file(const NavFile& file) {
  std::string out;
  for (const auto& h : file.header_lines) {
    out += h;
    out += '\n';
  }
  for (const NavRecord& r : file.records) {
    if (r.epoch.year < 1980 || r.epoch.year > 2079) {
      throw Error(Errc::InvalidArgument,
                  "epoch year " + std::to_string(r.epoch.year) + " has no two-digit form");
    }
    char head[32];
    std::snprintf(head, sizeof head, "%2d %02d %2d %2d %2d %2d%5.1f", r.prn, r.epoch.year % 100,
                  r.epoch.month, r.epoch.day, r.epoch.hour, r.epoch.minute, r.epoch.second);
    out += join_fields(head, r.af0, r.af1, r.af2);
    out += '\n';
    NavRecord copy = r;
    for (const Orbit& orbit : orbit_fields(copy)) {
      out += "   ";
      for (const double* v : orbit) {
        out += format_real(*v);
      }
      out += '\n';
    }
  }
  return out;
}

BroadcastEphemerisd to_ephemeris(const NavRecord& r) {
  BroadcastEphemerisd eph;
  eph.toe = r.toe;
  eph.a = r.sqrta * r.sqrta;
  eph.e = r.e;
  eph.i0 = r.i0;
  eph.omega0 = r.omega0;
  eph.omega = r.omega;
  eph.m0 = r.m0;
  eph.delta_n = r.deltan;
  eph.omega_dot = r.omegadot;
  eph.idot = r.idot;
  eph.cuc = r.cuc;
  eph.cus = r.cus;
  eph.crc = r.crc;
  eph.crs = r.crs;
  eph.cic = r.cic;
  eph.cis = r.cis;
  return eph;
}

double toe_gps_seconds(const NavRecord& r) {
  const double epoch = gps_seconds(r.epoch);
  const double week_start = static_cast<double>(day_number(r.epoch).week()) * kSecondsPerWeek;
  double toe = week_start + r.toe;
  if (toe - epoch > kSecondsPerWeek / 2) {
    toe -= kSecondsPerWeek;
  } else if (toe - epoch < -kSecondsPerWeek / 2) {
    toe += kSecondsPerWeek;
  }
  return toe;
}

std::string records_csv(const NavFile& file) {
  std::string out =
      "prn,epoch,af0,af1,af2,iode,crs,deltan,m0,cuc,e,cus,sqrta,toe,cic,omega0,cis,i0,crc,omega,"
      "omegadot,idot,codes_l2,week,l2p_flag,sv_accuracy,sv_health,tgd,iodc,transmission_time,"
      "fit_interval\n";
  for (const NavRecord& r : file.records) {
    out += std::to_string(r.prn) + ',' + format_iso_epoch(r.epoch);
    for (double v : {r.af0, r.af1, r.af2}) out += ',' + format_number(v);
    NavRecord copy = r;
    const auto orbits = orbit_fields(copy);
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      for (std::size_t slot = 0; slot < 4; ++slot) {
        if (k == 6 && slot >= 2) continue;
        out += ',' + format_number(*orbits[k][slot]);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace navforge::rinex
