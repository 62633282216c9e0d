#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "navforge/error.hpp"
#include "navforge/rinex.hpp"

using namespace navforge;
using namespace navforge::rinex;

namespace {

std::string fixture_text() {
  std::ifstream in(std::string(NAVFORGE_FIXTURE_DIR) + "/table1.11n");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
const ParseError* parse_error(Fn&& fn, ParseError& storage) {
  try {
    fn();
  } catch (const ParseError& e) {
    storage = e;
    return &storage;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("find_header_end") {
  std::vector<std::string> lines = {"a", "b", "c", "x", "                    END OF HEADER       ", "body"};
  CHECK(find_header_end(lines) == 4);
  CHECK(find_header_end(split_lines(fixture_text())) == 4);
  lines[4] = "nothing here";
  CHECK_THROWS_WITH_AS(find_header_end(lines), doctest::Contains("MissingHeaderEnd"), Error);
}

TEST_CASE("parse_real") {
  CHECK(parse_real("0.154255529548D+01") == 1.54255529548);
  CHECK(parse_real("-0.168422434376D+01") == -1.68422434376);
  CHECK(parse_real(" 0.000000000000D+00") == 0.0);
  CHECK(parse_real("  0.5d-02          ") == 0.005);
  CHECK(parse_real("   +1.25E+01") == 12.5);
  CHECK(parse_real("        42") == 42.0);
  CHECK_THROWS_WITH_AS(parse_real("                   "), doctest::Contains("MissingValue"), Error);
  CHECK_THROWS_WITH_AS(parse_real(" 0.15X255529548D+01"), doctest::Contains("MalformedNumber"), Error);
  CHECK_THROWS_AS(parse_real(" 0.1 5"), Error);
  CHECK_THROWS_AS(parse_real("nan"), Error);
}

TEST_CASE("parse_epoch") {
  const auto [prn, d] = parse_epoch(" 1 11  6 28  0  0  0.0");
  CHECK(prn == 1);
  CHECK(d == CalendarDateTime{2011, 6, 28, 0, 0, 0.0});
  CHECK(parse_epoch("12 99 12 31 23 59 59.9").second.year == 1999);
  CHECK(parse_epoch("12 99 12 31 23 59 59.9").second.second == 59.9);
  CHECK(parse_epoch(" 3 79  1  1  0  0  0.0").second.year == 2079);
  CHECK(parse_epoch(" 3 80  2  1  0  0  0.0").second.year == 1980);
  CHECK_THROWS_AS(parse_epoch(" 1 11  6 28  0"), Error);
  CHECK_THROWS_AS(parse_epoch(" 1 11 13 28  0  0  0.0"), Error);
  CHECK_THROWS_AS(parse_epoch(" 1 1x  6 28  0  0  0.0"), Error);
}

TEST_CASE("parse_nav_file on the fixture") {
  const NavFile f = parse_nav_file(fixture_text());
  REQUIRE(f.records.size() == 2);
  CHECK(f.header_lines.size() == 5);
  const NavRecord& t1 = f.records[0];
  CHECK(t1.prn == 1);
  CHECK(t1.epoch == CalendarDateTime{2011, 6, 28, 0, 0, 0.0});
  CHECK(t1.m0 == -1.68422434376);
  CHECK(t1.omega0 == 1.54255529548);
  CHECK(t1.omega == 0.148394519733);
  CHECK(t1.af0 == 0.472380593419e-4);
  CHECK(t1.sqrta == 5153.70808411);
  CHECK(t1.toe == 172800.0);
  CHECK(t1.iodc == 293.0);
  CHECK(t1.fit_interval == 4.0);
  CHECK(t1.spare1 == 0.0);  // blank spare

  const NavRecord& t2 = f.records[1];
  CHECK(t2.m0 == 0.716100835560);
  CHECK(t2.omega0 == 2.59243759787);
  CHECK(t2.omega == 1.49925811275);
  CHECK(t2.epoch == CalendarDateTime{2011, 6, 30, 4, 0, 0.0});

  const auto eph = to_ephemeris(t1);
  CHECK(eph.a == 5153.70808411 * 5153.70808411);
  CHECK(eph.delta_n == t1.deltan);
  CHECK(toe_gps_seconds(t1) == gps_seconds(t1.epoch));
}

TEST_CASE("parse_nav_file errors and line endings") {
  const std::string text = fixture_text();
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  CHECK(parse_nav_file(crlf) == parse_nav_file(text));
  CHECK(parse_nav_file(text + "\n\n").records.size() == 2);

  auto lines = split_lines(text);
  std::string extra = text + lines[5] + "\n";  // 17 body lines
  ParseError err(Errc::InvalidArgument, 0, 0, "");
  const ParseError* e = parse_error([&] { parse_nav_file(extra); }, err);
  REQUIRE(e != nullptr);
  CHECK(e->code() == Errc::TruncatedRecord);
  CHECK(e->line() == 22);

  std::string bad = text;
  bad.replace(bad.find("0.470373337157D-02"), 4, "0.4Q");
  e = parse_error([&] { parse_nav_file(bad); }, err);
  REQUIRE(e != nullptr);
  CHECK(e->code() == Errc::MalformedNumber);
  CHECK(e->line() == 8);
  CHECK(e->column() == 23);

  // shifting a numeric field by one column breaks the fixed slices
  std::string shifted = text;
  const auto pos = shifted.find("   -0.175088644028D-06");
  shifted.erase(pos, 1);
  e = parse_error([&] { parse_nav_file(shifted); }, err);
  REQUIRE(e != nullptr);
  CHECK(e->line() == 8);

  // padding inside a slice does not change the value
  std::string padded = text;
  padded.replace(padded.find(" 0.154255529548D+01"), 19, "      1.54255529548");
  CHECK(parse_nav_file(padded).records[0].omega0 == 1.54255529548);

  std::string no_header = text;
  no_header.replace(no_header.find("END OF HEADER"), 13, "END OF HEADEX");
  CHECK_THROWS_AS(parse_nav_file(no_header), Error);

  std::string bad_e = text;
  bad_e.replace(bad_e.find("0.470373337157D-02"), 18, "0.170373337157D+01");
  CHECK_THROWS_WITH_AS(parse_nav_file(bad_e), doctest::Contains("InvalidRecord"), ParseError);
}

TEST_CASE("serialize_nav_file round trip") {
  const NavFile f = parse_nav_file(fixture_text());
  const std::string out = serialize_nav_file(f);
  CHECK(parse_nav_file(out) == f);
  CHECK(serialize_nav_file(parse_nav_file(out)) == out);

  // the fixture was written in the conventional layout, so body lines
  // come back byte-identical apart from the filled-in spare fields
  const auto in_lines = split_lines(fixture_text());
  const auto out_lines = split_lines(out);
  REQUIRE(in_lines.size() == out_lines.size());
  for (std::size_t i = 0; i < in_lines.size(); ++i) {
    if (in_lines[i].size() == 41) {
      CHECK(out_lines[i].substr(0, 41) == in_lines[i]);
    } else {
      CHECK(out_lines[i] == in_lines[i]);
    }
  }

  const NavFile empty{f.header_lines, {}};
  CHECK(serialize_nav_file(empty) == [&] {
    std::string h;
    for (const auto& l : f.header_lines) h += l + "\n";
    return h;
  }());
}

TEST_CASE("format_real round-trips 19-column values") {
  CHECK(format_real(-1.68422434376) == "-0.168422434376D+01");
  CHECK(format_real(0.0) == " 0.000000000000D+00");
  CHECK(format_real(172800.0) == " 0.172800000000D+06");
  CHECK(parse_real(format_real(-1.68422434376)) == -1.68422434376);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mant(0.1, 1.0);
  std::uniform_int_distribution<int> expo(-20, 20);
  for (int i = 0; i < 2000; ++i) {
    char buf[32];
    const double m = (i % 2 ? -1 : 1) * mant(rng);
    std::snprintf(buf, sizeof buf, "%.12fD%+03d", m, expo(rng));
    const double v = parse_real(buf);
    const std::string s = format_real(v);
    CHECK(s.size() == 19);
    CHECK(parse_real(s) == v);
  }
  // values carrying more digits than the conventional layout
  for (double v : {1.2345678901234, -1.2345678901234, -9.87654321012e-300, 1e-300}) {
    CHECK(parse_real(format_real(v)) == v);
  }
}

TEST_CASE("records_csv") {
  const NavFile f = parse_nav_file(fixture_text());
  const std::string csv = records_csv(f);
  const auto lines = split_lines(csv);
  CHECK(lines.size() == 3);
  CHECK(lines[0].rfind("prn,epoch,af0", 0) == 0);
  CHECK(lines[1].rfind("1,2011-06-28T00:00:00,4.72380593419e-05", 0) == 0);
}
