#include <iostream>

#include "snowball/cli.hpp"

int main(int argc, char** argv) {
  return snowball::cli::run(argc, argv, std::cout, std::cerr);
}
