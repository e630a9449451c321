#include <iostream>

#include "pdde/cli.hpp"

int main(int argc, char** argv) { return pdde::run_cli(argc, argv, std::cout, std::cerr); }
