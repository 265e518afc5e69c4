#include <iostream>
#include <string>
#include <vector>

#include "tits/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  tits::cli::Response r = tits::cli::run_argv(std::move(args));
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
