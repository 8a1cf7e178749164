#include <string>
#include <vector>

#include "risopt/harness.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return risopt::cli_main(args);
}
