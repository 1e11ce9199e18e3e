#include <iostream>

#include "orthoexp_cli/cli.hpp"

int main(int argc, char** argv) { return orthoexp::cli::main_entry(argc, argv, std::cout, std::cerr); }
