#include <iostream>
#include <string>
#include <vector>

#include "collapse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return collapse::cli::run(args, std::cout, std::cerr);
}
