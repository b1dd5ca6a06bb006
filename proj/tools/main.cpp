#include <iostream>

#include "eqproof/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eqproof::run_cli(args, std::cout, std::cerr);
}
