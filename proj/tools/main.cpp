#include <iostream>

#include "isys/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return isys::run_cli(args, std::cout, std::cerr);
}
