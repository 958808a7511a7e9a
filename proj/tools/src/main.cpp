#include <iostream>

#include "projdyn/cli.hpp"

int main(int argc, char** argv) { return projdyn::cli::run(argc, argv, std::cout, std::cerr); }
