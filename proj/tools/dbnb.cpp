#include "dbnb/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return dbnb::run_cli({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
