#include <iostream>

#include "seplab/cli.hpp"

int main(int argc, char** argv) {
  return seplab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
