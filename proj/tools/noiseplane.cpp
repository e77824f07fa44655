#include <iostream>

#include "noiseplane/report.hpp"

int main(int argc, char** argv) {
  return noiseplane::run_cli(argc, argv, std::cout, std::cerr);
}
