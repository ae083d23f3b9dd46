#include "rigidity/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rigidity::run_cli(argc, argv, std::cout, std::cerr); }
