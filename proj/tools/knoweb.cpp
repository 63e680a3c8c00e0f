#include <iostream>
#include <string>
#include <vector>

#include "knoweb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return knoweb::run(args, std::cout, std::cerr);
}
