#include <iostream>
#include <string>
#include <vector>

#include "navforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return navforge::cli::run(args, std::cout, std::cerr);
}
