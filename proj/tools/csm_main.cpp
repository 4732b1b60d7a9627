#include <iostream>

#include "csm/cli.hpp"

int main(int argc, char** argv) { return csm::run_cli(argc, argv, std::cout, std::cerr); }
