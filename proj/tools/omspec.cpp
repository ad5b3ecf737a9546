#include <string>
#include <vector>

#include "optomech/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return optomech::run_cli(args);
}
