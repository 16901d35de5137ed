#include <iostream>
#include <string>
#include <vector>

#include "revlat/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return revlat::cli::dispatch(args, std::cout, std::cerr);
}
