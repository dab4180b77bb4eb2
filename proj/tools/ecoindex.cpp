#include <iostream>
#include <string>
#include <vector>

#include "ecoindex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ecoindex::run_cli(args, std::cout, std::cerr);
}
