#include <iostream>

#include "ptcav/cli.hpp"

int main(int argc, char** argv) { return ptcav::cli::run_cli(argc, argv, std::cout, std::cerr); }
