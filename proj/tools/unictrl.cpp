#include <iostream>

#include "unictrl/cli_app.hpp"

int main(int argc, char** argv) {
    return unictrl::run_cli(argc, argv, std::cout, std::cerr);
}
