#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return certicurve::tools::run(argc, argv, std::cout, std::cerr); }
