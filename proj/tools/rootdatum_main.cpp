#include <iostream>

#include "rootdatum_cmd.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return perfrd::cli::run_rootdatum(args, std::cout, std::cerr);
}
