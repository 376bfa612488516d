#include "tcpdl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tcpdl::cli::run(argc, argv, std::cout, std::cerr); }
