#include <iostream>

#include "kmflag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  kmflag::cli::Result r = kmflag::cli::run(args);
  std::cout << r.output;
  return r.exit_code;
}
