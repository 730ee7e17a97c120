#include <iostream>

#include "sykh/cli.hpp"

int main(int argc, char** argv) { return sykh::run(argc, argv, std::cout, std::cerr); }
