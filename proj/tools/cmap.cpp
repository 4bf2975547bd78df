#include <iostream>

#include "cmap/cli.hpp"

int main(int argc, char** argv) {
  return cmap::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
