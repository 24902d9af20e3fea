#include <iostream>
#include <string>
#include <vector>

#include "elastika/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return elastika::run_cli(args, std::cout, std::cerr);
}
