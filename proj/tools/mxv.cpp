#include <iostream>

#include "mxv/cli.hpp"

int main(int argc, char** argv) { return mxv::cli::run(argc, argv, std::cout, std::cerr); }
