#include <iostream>

#include "affinelab/cli.hpp"

int main(int argc, char** argv) { return affinelab::run(argc, argv, std::cout, std::cerr); }
