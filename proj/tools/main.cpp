#include <iostream>
#include <string>
#include <vector>

#include "colben/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return colben::run_cli(args, std::cout, std::cerr);
}
