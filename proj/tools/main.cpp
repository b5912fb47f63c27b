#include <iostream>

#include "beltrami/cli.hpp"

int main(int argc, char** argv)
{
    return beltrami::run_cli(argc, argv, std::cout, std::cerr);
}
