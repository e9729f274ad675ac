#include <iostream>

#include "rsside/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rsside::run_cli(args, std::cout, std::cerr);
}
