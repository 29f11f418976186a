#include <iostream>
#include <vector>

#include "pauli_compat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pauli_compat::run_cli(args, std::cout, std::cerr);
}
