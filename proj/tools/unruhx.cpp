#include <iostream>
#include <string>
#include <vector>

#include "unruhx/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return unruhx::cli::run(args, std::cout, std::cerr);
}
