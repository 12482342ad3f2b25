#include <iostream>
#include <string>
#include <vector>

#include "liftlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return liftlab::run_cli(args, std::cout, std::cerr);
}
