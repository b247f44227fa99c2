#include <iostream>

#include "padic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return padic::run_cli(args, std::cout, std::cerr);
}
