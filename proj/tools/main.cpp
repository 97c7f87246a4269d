#include <iostream>

#include "tnbn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tnbn::run_cli(args, std::cout, std::cerr);
}
