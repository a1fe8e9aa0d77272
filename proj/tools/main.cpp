#include <iostream>
#include <string>
#include <vector>

#include "blockabs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blockabs::cli::run(args, std::cout, std::cerr);
}
