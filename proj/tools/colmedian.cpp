#include <iostream>
#include <string>
#include <vector>

#include "colmedian/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return colmedian::run(args, std::cout, std::cerr);
}
