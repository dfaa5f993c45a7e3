#include <iostream>

#include "lfif/cli.hpp"

int main(int argc, char** argv) { return lfif::cli_dispatch(argc, argv, std::cout, std::cerr); }
