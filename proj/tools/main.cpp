#include <iostream>
#include <string>
#include <vector>

#include "hwf/commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return hwf::cli::run(args, std::cout, std::cerr);
}
