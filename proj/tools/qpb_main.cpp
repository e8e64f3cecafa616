#include <iostream>
#include <vector>

#include "qpb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qpb::run_command(args, std::cout, std::cerr);
}
