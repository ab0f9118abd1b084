#include <iostream>

#include "satbeam/cli.hpp"

int main(int argc, char** argv) { return satbeam::cli_main(argc, argv, std::cout, std::cerr); }
