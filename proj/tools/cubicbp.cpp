#include <iostream>

#include "cubicbp/cli.hpp"

int main(int argc, char** argv) { return cubicbp::cli::run(argc, argv, std::cout, std::cerr); }
