#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return isoproj::cli::run(argc, argv, std::cout, std::cerr); }
