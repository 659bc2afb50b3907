#include <iostream>

#include "matchstick/cli.hpp"

int main(int argc, char** argv) {
  return matchstick::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
