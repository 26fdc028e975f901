#include <vector>

#include "padform/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return padform::run_cli(args);
}
