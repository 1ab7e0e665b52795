#include <iostream>
#include <string>
#include <vector>

#include "qscreen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qscreen::run_cli(args, std::cout, std::cerr);
}
