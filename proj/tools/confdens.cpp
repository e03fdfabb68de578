// Command-line entry point; all behavior lives in confdens/cli.hpp so the
// tests can drive the same code through in-memory streams.

#include <iostream>
#include <string>
#include <vector>

#include "confdens/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return confdens::cli::run(std::move(args), std::cout, std::cerr);
}
