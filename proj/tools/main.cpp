// SPDX-License-Identifier: MIT
#include "tropdiv/io.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tropdiv::run(args, std::cout, std::cerr);
}
