#include <iostream>

#include "padic/cli.hpp"

int main(int argc, char** argv) { return padic::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
