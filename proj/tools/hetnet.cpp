#include "hetnet/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hetnet::run_cli(argc, argv, std::cout, std::cerr); }
