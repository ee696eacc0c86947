#include <iostream>

#include "sl2_cmd.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return perfrd::cli::run_sl2(args, std::cout, std::cerr);
}
