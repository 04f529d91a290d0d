#include <cstdlib>
#include <iostream>

#include "nonholonomy/cli/app.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("NONHOLONOMY_SEED")) env_seed = s;
  const auto result = nonholonomy::cli::run(std::vector<std::string>(argv, argv + argc), env_seed);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
