#include <iostream>
#include <string>
#include <vector>

#include "fadecap/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fadecap::cli::run(args, std::cout, std::cerr);
}
