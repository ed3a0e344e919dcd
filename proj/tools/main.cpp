#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return forge::run(argc, argv, std::cout, std::cerr); }
