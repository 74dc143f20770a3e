#include <iostream>

#include "qlab/cli.hpp"

int main(int argc, char** argv) {
  return qlab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
