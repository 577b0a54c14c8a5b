#include <iostream>
#include <string>
#include <vector>

#include "gravshift/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return gravshift::cli::run(args, std::cout, std::cerr);
}
