#include <iostream>

#include "pscale/cli.hpp"

int main(int argc, char** argv) { return pscale::run_cli(argc, argv, std::cout, std::cerr); }
