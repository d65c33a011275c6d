#include <iostream>

#include "defspec/cli_runner.hpp"

int main(int argc, char** argv) { return defspec::cli_main(argc, argv, std::cout, std::cerr); }
