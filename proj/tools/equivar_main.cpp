#include <iostream>
#include <string>
#include <vector>

#include "equivar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return equivar::cli::run(args, std::cout, std::cerr);
}
