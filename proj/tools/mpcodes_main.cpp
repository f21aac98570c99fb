#include <iostream>
#include <string>
#include <vector>

#include "mpcodes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mpcodes::cli::cli_main(std::move(args), std::cout, std::cerr);
}
