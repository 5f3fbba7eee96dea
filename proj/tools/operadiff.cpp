#include "operadiff/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return operadiff::run_cli(argc, argv, std::cout, std::cerr); }
