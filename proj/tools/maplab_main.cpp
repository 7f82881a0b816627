#include <iostream>

#include "maplab/cli.hpp"

int main(int argc, char** argv) {
  return maplab::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
