#include <string>
#include <vector>

#include "gmorph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmorph::cli::run(args);
}
