#include <iostream>

#include "a1lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return a1lab::run_cli(args, std::cout, std::cerr);
}
