#include <iostream>

#include "rsg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rsg::cli::run(args, std::cout, std::cerr);
}
