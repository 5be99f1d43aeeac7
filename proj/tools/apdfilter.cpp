#include <iostream>

#include "apdfilter_cli.hpp"

int main(int argc, char** argv) { return apd::cli::run(argc, argv, std::cout, std::cerr); }
