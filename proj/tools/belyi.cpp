#include <iostream>
#include <string>
#include <vector>

#include "belyi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto outcome = belyi::run_cli(args);
  std::cout << outcome.out;
  std::cerr << outcome.err;
  return outcome.exit_code;
}
