#include <iostream>

#include "cantor/cli.hpp"

int main(int argc, char** argv) {
  return cantor::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
