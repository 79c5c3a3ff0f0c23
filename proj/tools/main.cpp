#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return framecomp::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
