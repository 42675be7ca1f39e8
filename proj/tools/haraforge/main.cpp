#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  haraforge::cli::Options options;
  const char* no_color = std::getenv("NO_COLOR");
  options.color = isatty(STDOUT_FILENO) != 0 && (no_color == nullptr || *no_color == '\0');
  std::vector<std::string> args(argv + 1, argv + argc);
  const int status = haraforge::cli::run(args, std::cout, std::cerr, options);
  std::cout.flush();
  return status;
}
