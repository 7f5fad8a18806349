#include "injeqt/cli.hpp"

#include <iostream>

int
main(int argc, char** argv)
{
    return injeqt::run_cli(argc, argv, std::cout, std::cerr);
}
