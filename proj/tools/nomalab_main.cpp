// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "nomalab/cli.hpp"

int main(int argc, char** argv) {
    return nomalab::cli::run(argc, argv, std::cout, std::cerr);
}
