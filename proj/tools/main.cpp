#include <string>
#include <vector>

#include "expcodes/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return expcodes::cli_run(args);
}
