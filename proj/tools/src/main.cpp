#include <iostream>
#include <string>
#include <vector>

#include "beauville/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return beauville::cli::run_cli(args, std::cout, std::cerr, beauville::cli::process_environment());
}
