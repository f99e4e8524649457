#include <iostream>

#include "nced/cli.hpp"

int main(int argc, char** argv) { return nced::cli::run(argc, argv, std::cout, std::cerr); }
