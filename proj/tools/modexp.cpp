#include <iostream>

#include "modexp/cli.hpp"

int main(int argc, char** argv) { return modexp::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
