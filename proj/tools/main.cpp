#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return mexneedlet::cli::run(argc, argv, std::cout, std::cerr);
}
