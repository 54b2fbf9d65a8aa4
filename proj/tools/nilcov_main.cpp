#include <iostream>
#include <string>
#include <vector>

#include "nilcov/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilcov::run_cli(args, std::cout, std::cerr);
}
