#include <string>
#include <vector>

#include "stereoseld/cli.hpp"

int main(int argc, char** argv) {
    return stereoseld::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
