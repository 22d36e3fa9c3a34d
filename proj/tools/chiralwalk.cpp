#include <iostream>

#include "chiralwalk/cli.hpp"

int main(int argc, char** argv) {
  return chiralwalk::cli::main_entry(argc, argv, std::cout, std::cerr);
}
