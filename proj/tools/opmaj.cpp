#include <iostream>

#include "opmaj/cli.hpp"

int main(int argc, char** argv) {
  return opmaj::cli::main_entry(argc, argv, std::cout, std::cerr);
}
