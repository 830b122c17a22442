#include <iostream>

#include "plectic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return plectic::run_cli(args, std::cout, std::cerr);
}
