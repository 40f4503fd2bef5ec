#include <iostream>
#include <string>
#include <vector>

#include "rotorbell/cli.hpp"

int main(int argc, char** argv) {
  return rotorbell::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                             std::cerr);
}
