#include <iostream>

#include "eisq/cli.hpp"

int main(int argc, char** argv) {
  return eisq::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
