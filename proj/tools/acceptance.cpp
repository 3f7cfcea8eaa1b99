// Runs every acceptance criterion and prints one pass/fail line for each.
// Exit status is 0 when all pass and 3 otherwise.

#include "cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args{"verify"};
    args.insert(args.end(), argv + 1, argv + argc);
    return cmweyl::cli::run(args, std::cout, std::cerr);
}
