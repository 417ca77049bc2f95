#include <iostream>
#include <string>
#include <vector>

#include <hhlab/cli.hpp>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return hhlab::cli::run(args, std::cout, std::cerr);
}
