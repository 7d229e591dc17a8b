#include <iostream>

#include "rdsim/cli.hpp"

int main(int argc, char** argv) { return rdsim::run_cli(argc, argv, std::cout, std::cerr); }
