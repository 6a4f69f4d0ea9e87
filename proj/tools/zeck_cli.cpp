#include <iostream>

#include "zeck/cli.hpp"

int main(int argc, char** argv) { return zeck::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
