#include <iostream>

#include "multipoint/cli.hpp"

int main(int argc, char** argv) { return multipoint::cli::run(argc, argv, std::cout, std::cerr); }
