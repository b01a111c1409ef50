#include <iostream>
#include <vector>

#include "entsub/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return entsub::cli::run(args, std::cout, std::cerr);
}
