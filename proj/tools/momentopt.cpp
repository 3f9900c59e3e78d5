#include <iostream>

#include "momentopt/cli/commands.hpp"

int main(int argc, char** argv) {
    return momentopt::cli::run_cli(argc, argv, std::cout, std::cerr);
}
