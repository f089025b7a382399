#include "hbvp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hbvp::run_cli(argc, argv, std::cout, std::cerr); }
