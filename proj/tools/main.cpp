#include <iostream>

#include "densecode_cli.hpp"

int main(int argc, char** argv) { return densecode::cli::run(argc, argv, std::cout, std::cerr); }
