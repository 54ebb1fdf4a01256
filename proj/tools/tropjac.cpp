#include <iostream>

#include "tropjac/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tropjac::cli::run_command(args, std::cout, std::cerr);
}
