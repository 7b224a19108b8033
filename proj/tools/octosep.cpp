#include <iostream>
#include <string>
#include <vector>

#include "octosep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return octosep::cli::run(args, std::cout, std::cerr);
}
