#include <iostream>

#include "ltdr/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = ltdr::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
