#include <iostream>
#include <string>
#include <vector>

#include "cyclogap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cyclogap::cli_dispatch(args, std::cout, std::cerr);
}
