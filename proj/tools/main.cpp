#include <vector>

#include "wigmod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wigmod::cli_main(args);
}
