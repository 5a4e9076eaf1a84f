#include <iostream>

#include "vegas/cli/commands.hpp"

int main(int argc, char** argv) {
  try {
    return vegas::cli::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vegas::cli::kExitConfig;
  }
}
