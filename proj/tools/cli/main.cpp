#include "annuli/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return annuli::cli::run_cli(argc, argv, std::cout, std::cerr);
}
