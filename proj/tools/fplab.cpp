#include <iostream>
#include <string>
#include <vector>

#include "fplab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fplab::cli::dispatch(args, std::cout, std::cerr);
}
