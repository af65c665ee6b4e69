#include <iostream>

#include "sigtree/cli.hpp"

int main(int argc, char** argv) { return sigtree::cli::main(argc, argv, std::cout, std::cerr); }
