#include <iostream>
#include <string>
#include <vector>

#include "gpreal/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gpreal::cli::RunCli(args, std::cout, std::cerr);
}
