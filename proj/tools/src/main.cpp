#include <iostream>

#include "blasso_cli/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return blasso::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
