#include <cstdlib>
#include <fstream>
#include <sstream>

#include "navforge/ephemeris.hpp"

namespace navforge {

PhysicalConstantsd load_constants(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::InvalidArgument, "cannot open constants file " + path.string());
  }
  PhysicalConstantsd c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error(Errc::InvalidArgument,
                    path.string() + ":" + std::to_string(line_no) + ": expected key = value");
      }
      continue;
    }
    std::istringstream key_in(line.substr(0, eq));
    std::istringstream value_in(line.substr(eq + 1));
    std::string key;
    double value = 0;
    std::string rest;
    if (!(key_in >> key) || !(value_in >> value) || (value_in >> rest)) {
      throw Error(Errc::InvalidArgument,
                  path.string() + ":" + std::to_string(line_no) + ": malformed entry");
    }
    if (key == "earth_radius") {
      c.earth_radius = value;
    } else if (key == "j2") {
      c.j2 = value;
    } else if (key == "mu") {
      c.mu = value;
    } else if (key == "earth_rotation") {
      c.earth_rotation = value;
    } else {
      throw Error(Errc::InvalidArgument,
                  path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

PhysicalConstantsd constants_from_environment() {
  const char* path = std::getenv("NAVFORGE_CONSTANTS");
  if (path == nullptr || *path == '\0') {
    return PhysicalConstantsd{};
  }
  return load_constants(path);
}

}  // namespace navforge
