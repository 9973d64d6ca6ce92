#include <iostream>

#include "cslbound/cli.hpp"

int main(int argc, char** argv) { return cslbound::run_cli(argc, argv, std::cout, std::cerr); }
