#include <iostream>

#include "hsl/cli.hpp"

int main(int argc, char** argv) { return hsl::cli::run(argc, argv, std::cout, std::cerr); }
