#include "idlbridge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return idlb::cli::run(argc, argv, std::cout, std::cerr);
}
