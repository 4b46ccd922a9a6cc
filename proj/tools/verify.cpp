#include "milnor_forge/runner.hpp"

#include <iostream>

int main(int argc, char **argv) { return milnor_forge::main_entry(argc, argv, std::cout, std::cerr); }
