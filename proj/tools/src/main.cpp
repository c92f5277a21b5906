#include <iostream>

#include "schur_bench/bench.hpp"

int main(int argc, char** argv) {
  return schur::bench::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
