#include <iostream>

#include "cesaro_cli/cli.hpp"

int main(int argc, char** argv) {
    return cesaro::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
