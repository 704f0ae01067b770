#include <iostream>
#include <string>
#include <vector>

#include "ufp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ufp::cli::run(args, std::cout, std::cerr);
}
