#include <iostream>
#include <string>
#include <vector>

#include "twolocus/lab/execute.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twolocus::lab::run_cli(args, std::cout, std::cerr);
}
