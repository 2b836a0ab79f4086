#include <iostream>
#include <string>
#include <vector>

#include "padic/cli.hpp"

int main(int argc, char **argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return padic::cli::run(args, std::cout, std::cerr);
}
