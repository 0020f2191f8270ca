#include <iostream>

#include "jobsweep/cli.hpp"

int main(int argc, char* argv[]) {
  return jobsweep::run_cli(argc, argv, std::cout, std::cerr);
}
