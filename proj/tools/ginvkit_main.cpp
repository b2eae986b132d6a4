#include "ginvkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ginv::cli::run(argc, argv, std::cout, std::cerr); }
