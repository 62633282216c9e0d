#include "navforge/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "navforge/clock.hpp"
#include "navforge/constellation.hpp"
#include "navforge/csv.hpp"
#include "navforge/dop.hpp"
#include "navforge/ephemeris.hpp"
#include "navforge/framing.hpp"
#include "navforge/gpstime.hpp"
#include "navforge/rinex.hpp"

namespace navforge::cli {
namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownPrn : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output goes to a sibling temp file first and is renamed into place, so
// a failed run never leaves a truncated artifact behind.
void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f || !f.write(bytes.data(), static_cast<std::streamsize>(bytes.size())) || !f.flush()) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::MissingHeaderEnd:
    case Errc::MalformedNumber:
    case Errc::MissingValue:
    case Errc::MalformedEpoch:
    case Errc::TruncatedRecord:
    case Errc::InvalidRecord:
      return kParse;
    case Errc::FieldOverflow:
      return kFieldOverflow;
    default:
      return kUsage;
  }
}

/// Local civil epoch -> continuous GPS seconds.
double to_gps_seconds(const CalendarDateTime& local, int timezone) {
  return gps_seconds(local) - timezone * 3600.0;
}

const rinex::NavRecord& find_record(const rinex::NavFile& file, int prn) {
  for (const auto& r : file.records) {
    if (r.prn == prn) {
      return r;
    }
  }
  throw UnknownPrn("no record for PRN " + std::to_string(prn));
}

std::vector<double> sample_times(double start, double end, double step) {
  if (!(step > 0.0)) {
    throw UsageError("--step must be positive");
  }
  if (end < start) {
    throw UsageError("end epoch precedes start epoch");
  }
  std::vector<double> times;
  const auto n = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) {
    times.push_back(start + static_cast<double>(k) * step);
  }
  if (end - times.back() > 1e-6) {
    times.push_back(end);
  }
  return times;
}

struct Options {
  std::string out_path;
  int timezone = 0;

  std::string input;
  int prn = 1;
  std::string to_epoch;
  std::string start_epoch;
  double step = 300.0;
  double duration = 86400.0;
  bool strict_half_week = false;

  bool synthetic = false;
  std::size_t frames = kFramesPerSuperframe;
  std::string format = "bits";
  bool paper_literal_toc = false;
  bool paper_literal_clock = false;
  double clock_a1 = 1e-11;
  double clock_a2 = 0.0;
  std::string clock_start_epoch;
  double clock_fit_age = 0.0;
  double eph_fit_age = 0.0;

  std::string frame = "ecef";
  double lat = 30.0;
  double lon = 120.0;
  double height = 0.0;
  double mask = 5.0;
  ConstellationSpec spec;
};

void add_constellation_overrides(CLI::App* cmd, Options& o) {
  cmd->add_option("--sma", o.spec.semi_major_axis, "Semi-major axis, m");
  cmd->add_option("--ecc", o.spec.eccentricity, "Eccentricity");
  cmd->add_option("--inclination", o.spec.inclination_deg, "Inclination, deg");
  cmd->add_option("--phase-offset", o.spec.phase_offset_per_plane_deg,
                  "In-plane phase stagger per plane, deg");
}

int cmd_parse_rinex(const Options& o, std::ostream& out) {
  const auto file = rinex::parse_nav_file(read_file(o.input));
  write_output(o.out_path, rinex::records_csv(file), out);
  return kOk;
}

int cmd_extrapolate(const Options& o, const PhysicalConstantsd& c, std::ostream& out,
                    std::ostream& err) {
  const auto file = rinex::parse_nav_file(read_file(o.input));
  const rinex::NavRecord& record = find_record(file, o.prn);
  BroadcastEphemerisd eph = rinex::to_ephemeris(record);
  eph.toe = rinex::toe_gps_seconds(record);

  const double start = gps_seconds(record.epoch);
  const double end =
      o.to_epoch.empty() ? start : to_gps_seconds(parse_iso_epoch(o.to_epoch), o.timezone);
  const auto policy = o.strict_half_week ? HalfWeekPolicy::Error : HalfWeekPolicy::Warn;

  std::string csv = "t,a,e,i,omega0,omega,m\n";
  bool warned = false;
  for (const double t : sample_times(start, end, o.step)) {
    if (!warned && exceeds_half_week(eph, t) && policy == HalfWeekPolicy::Warn) {
      err << "warning: extrapolating more than half a week from toe\n";
      warned = true;
    }
    const auto at = extrapolate(eph, t, c, policy);
    csv += format_number(t) + ',' + format_number(at.a) + ',' + format_number(at.e) + ',' +
           format_number(at.i0) + ',' + format_number(at.omega0) + ',' + format_number(at.omega) +
           ',' + format_number(at.m0) + '\n';
  }
  write_output(o.out_path, csv, out);
  return kOk;
}

int cmd_gen_nav(const Options& o, const PhysicalConstantsd& c, std::ostream& out) {
  if (o.format != "bits" && o.format != "bin") {
    throw UsageError("--format must be bits or bin");
  }
  if (!o.synthetic && o.input.empty()) {
    throw UsageError("gen-nav needs a RINEX input or --synthetic");
  }
  if (o.frames == 0) {
    throw UsageError("--frames must be positive");
  }
  const CalendarDateTime start = parse_iso_epoch(o.start_epoch);
  const TimeParameters grid = reference_times(start, o.timezone, TocMode::Standard);
  TimeParameters tp = reference_times(
      start, o.timezone, o.paper_literal_toc ? TocMode::PaperLiteral : TocMode::Standard);
  const ZCount start_z = z_count(GpsSecondsOfWeek{grid.toc});

  double toc_shift = tp.toc - grid.toc;
  if (toc_shift < -kSecondsPerWeek / 2) {
    toc_shift += kSecondsPerWeek;
  }
  const double toe_abs = to_gps_seconds(start, o.timezone) + toc_shift;
  const auto clock_mode =
      o.paper_literal_clock ? RereferenceMode::PaperLiteral : RereferenceMode::Exact;

  BroadcastEphemerisd eph;
  ClockPolynomiald clock;
  if (o.synthetic) {
    const auto sats = generate_constellation(o.spec, toe_abs);
    if (o.prn < 1 || o.prn > static_cast<int>(sats.size())) {
      throw UnknownPrn("synthetic constellation has no PRN " + std::to_string(o.prn));
    }
    eph = sats[static_cast<std::size_t>(o.prn - 1)].eph;
    const double t_gps0 = o.clock_start_epoch.empty()
                              ? toe_abs
                              : to_gps_seconds(parse_iso_epoch(o.clock_start_epoch), o.timezone);
    clock = rereference(ClockInitd{o.clock_a1, o.clock_a2, t_gps0}, toe_abs, clock_mode);
  } else {
    const auto file = rinex::parse_nav_file(read_file(o.input));
    const rinex::NavRecord& record = find_record(file, o.prn);
    eph = rinex::to_ephemeris(record);
    eph.toe = rinex::toe_gps_seconds(record);
    eph = extrapolate(eph, toe_abs, c);
    // The record epoch is the clock start, where a0 is zero by definition.
    clock = rereference(ClockInitd{record.af1, record.af2, gps_seconds(record.epoch)}, toe_abs,
                        clock_mode);
  }

  const DataAges ages =
      data_ages(tp.toc, tp.toe, ObservationTimes{tp.toc - o.clock_fit_age, tp.toe - o.eph_fit_age});

  const FieldValues payload = {
      {"toc", tp.toc},         {"toe", tp.toe},         {"iodc", ages.iodc},
      {"iode", ages.iode},     {"a0", clock.a0},        {"a1", clock.a1},
      {"a2", clock.a2},        {"crs", eph.crs},        {"deltan", eph.delta_n},
      {"m0", eph.m0},          {"cuc", eph.cuc},        {"e", eph.e},
      {"cus", eph.cus},        {"sqrta", std::sqrt(eph.a)}, {"cic", eph.cic},
      {"omega0", eph.omega0},  {"cis", eph.cis},        {"i0", eph.i0},
      {"crc", eph.crc},        {"omega", eph.omega},    {"omegadot", eph.omega_dot},
      {"idot", eph.idot},
  };
  const std::array<PagePair, kFramesPerSuperframe> pages{};
  const auto frames = assemble_frames(start_z, payload, pages, o.frames, default_layout());

  if (o.format == "bits") {
    write_output(o.out_path, serialize_text(frames), out);
  } else {
    const auto bytes = serialize_packed(frames);
    write_output(o.out_path, std::string(bytes.begin(), bytes.end()), out);
  }
  return kOk;
}

int cmd_constellation(const Options& o, const PhysicalConstantsd& c, std::ostream& out) {
  if (o.frame != "ecef" && o.frame != "inertial") {
    throw UsageError("--frame must be ecef or inertial");
  }
  const double t0 = to_gps_seconds(parse_iso_epoch(o.start_epoch), o.timezone);
  const auto times = sample_times(t0, t0 + o.duration, o.step);
  const auto sats = generate_constellation(o.spec, t0);
  const auto frame = o.frame == "ecef" ? ReferenceFrame::EarthFixed : ReferenceFrame::Inertial;
  std::string csv = "t,prn,x,y,z\n";
  for (const Satellite& s : sats) {
    for (const double t : times) {
      const EcefPosition p = position_from_elements(s.eph, t, c, frame);
      csv += format_number(t) + ',' + std::to_string(s.prn) + ',' + format_number(p.x()) + ',' +
             format_number(p.y()) + ',' + format_number(p.z()) + '\n';
    }
  }
  write_output(o.out_path, csv, out);
  return kOk;
}

int cmd_dop(const Options& o, const PhysicalConstantsd& c, std::ostream& out) {
  if (!(o.step > 0.0) || !(o.duration >= 0.0)) {
    throw UsageError("--step must be positive and --duration non-negative");
  }
  if (!(o.lat >= -90.0 && o.lat <= 90.0) || !(o.lon >= -180.0 && o.lon <= 360.0) ||
      !(std::abs(o.height) < 1.0e5)) {
    throw UsageError("geodetic position out of range");
  }
  const double t0 = to_gps_seconds(parse_iso_epoch(o.start_epoch), o.timezone);
  const auto rows =
      pdop_series(o.spec, Geodetic{o.lat, o.lon, o.height}, t0, o.duration, o.step, o.mask, c);
  std::string csv = "t,visible_count,pdop\n";
  for (const DopResult& r : rows) {
    csv += format_number(r.t) + ',' + std::to_string(r.visible_count) + ',' +
           (r.pdop ? format_number(*r.pdop) : std::string{}) + '\n';
  }
  write_output(o.out_path, csv, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"GPS navigation message generator and validation tools", "navforge"};
  app.require_subcommand(1);
  app.add_option("-o,--out", o.out_path, "Output file ('-' or omitted for stdout)");
  app.add_option("--timezone", o.timezone, "Hours local time is ahead of GPS time");

  auto* parse = app.add_subcommand("parse-rinex", "Dump a RINEX 2 navigation file as CSV");
  parse->add_option("input", o.input, "RINEX navigation file")->required();

  auto* extra = app.add_subcommand("extrapolate", "Secular element time series for one PRN");
  extra->add_option("input", o.input, "RINEX navigation file")->required();
  extra->add_option("--prn", o.prn, "Satellite PRN")->required();
  extra->add_option("--to", o.to_epoch, "Target epoch YYYY-MM-DDThh:mm:ss");
  extra->add_option("--step", o.step, "Sample step, s");
  extra->add_flag("--strict-half-week", o.strict_half_week,
                  "Fail instead of warning beyond 302400 s from toe");

  auto* gen = app.add_subcommand("gen-nav", "Assemble navigation message frames");
  gen->add_option("input", o.input, "RINEX navigation file");
  gen->add_flag("--synthetic", o.synthetic, "Use the nominal constellation instead of RINEX");
  gen->add_option("--prn", o.prn, "Satellite PRN");
  gen->add_option("--start", o.start_epoch, "Start epoch YYYY-MM-DDThh:mm:ss")->required();
  gen->add_option("--frames", o.frames, "Number of 1500-bit frames");
  gen->add_option("--format", o.format, "bits or bin");
  gen->add_flag("--paper-literal-toc", o.paper_literal_toc, "Add the 43 s toc offset");
  gen->add_flag("--paper-literal-clock", o.paper_literal_clock,
                "Re-reference a1 without the factor 2");
  gen->add_option("--a1", o.clock_a1, "Clock rate at the clock start epoch, s/s");
  gen->add_option("--a2", o.clock_a2, "Clock drift rate, s/s^2");
  gen->add_option("--clock-start", o.clock_start_epoch, "Clock start epoch (default --start)");
  gen->add_option("--clock-fit-age", o.clock_fit_age, "toc minus last clock-fit observation, s");
  gen->add_option("--eph-fit-age", o.eph_fit_age, "toe minus last ephemeris-fit observation, s");
  add_constellation_overrides(gen, o);

  auto* cons = app.add_subcommand("constellation", "Satellite positions of the nominal constellation");
  cons->add_option("--start", o.start_epoch, "Start epoch")->required();
  cons->add_option("--duration", o.duration, "Span, s");
  cons->add_option("--step", o.step, "Sample step, s");
  cons->add_option("--frame", o.frame, "ecef or inertial");
  add_constellation_overrides(cons, o);

  auto* dop = app.add_subcommand("dop", "PDOP time series for a ground user");
  dop->add_option("--lat", o.lat, "Latitude, deg");
  dop->add_option("--lon", o.lon, "Longitude, deg");
  dop->add_option("--height", o.height, "Ellipsoidal height, m");
  dop->add_option("--start", o.start_epoch, "Start epoch")->required();
  dop->add_option("--duration", o.duration, "Span, s");
  dop->add_option("--step", o.step, "Sample step, s");
  dop->add_option("--mask", o.mask, "Elevation mask, deg");
  add_constellation_overrides(dop, o);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("navforge");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (const char* path = std::getenv("NAVFORGE_CONSTANTS"); path && *path && !fs::exists(path)) {
      throw IoError(std::string("NAVFORGE_CONSTANTS file not found: ") + path);
    }
    const PhysicalConstantsd constants = constants_from_environment();
    if (parse->parsed()) return cmd_parse_rinex(o, out);
    if (extra->parsed()) return cmd_extrapolate(o, constants, out, err);
    if (gen->parsed()) return cmd_gen_nav(o, constants, out);
    if (cons->parsed()) return cmd_constellation(o, constants, out);
    if (dop->parsed()) return cmd_dop(o, constants, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const UnknownPrn& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownPrn;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace navforge::cli
