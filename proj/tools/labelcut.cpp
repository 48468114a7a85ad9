#include <labelcut/cli.hpp>

#include <iostream>

int main(int argc, char ** argv)
{
    return labelcut::cli::run(argc, argv, std::cout, std::cerr);
}
