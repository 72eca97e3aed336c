#include <iostream>

#include "closure/cli.hpp"

int main(int argc, char** argv) { return closure::cli::main_entry(argc, argv, std::cout, std::cerr); }
