#include <iostream>
#include <string>
#include <vector>

#include "erc20graph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return erc20graph::cli::run(args, std::cout, std::cerr);
}
