#include <vector>

#include "sfdd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sfdd::run_cli(args);
}
