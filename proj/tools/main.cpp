#include <iostream>

#include "bcfit/cli.hpp"

int main(int argc, char** argv) {
  return bcfit::cli::run(argc, argv, std::cout, std::cerr);
}
