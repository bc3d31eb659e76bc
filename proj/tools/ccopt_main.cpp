#include <iostream>

#include "ccopt/cli.hpp"

int main(int argc, char** argv) {
    return ccopt::run_cli(argc, argv, std::cout, std::cerr);
}
