#include <iostream>

#include "sincpow/cli.hpp"

int main(int argc, char** argv) {
  return sincpow::cli::run(argc, argv, std::cout, std::cerr);
}
