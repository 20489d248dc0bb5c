#include <iostream>
#include <string>
#include <vector>

#include <mbar/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return mbar::cli::main(args, std::cout, std::cerr);
}
