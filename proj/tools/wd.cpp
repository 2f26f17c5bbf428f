#include <iostream>

#include "wd/frontend/cli.hpp"

int main(int argc, char** argv) { return wd::frontend::run_cli(argc, argv, std::cout, std::cerr); }
