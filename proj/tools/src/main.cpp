#include <iostream>

#include "excitonsim_cli/app.hpp"

int main(int argc, char** argv) {
    return excitonsim::cli::run_cli(argc, argv, std::cout, std::cerr);
}
