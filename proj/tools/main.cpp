#include <iostream>

#include "jnsharp/cli.hpp"

int main(int argc, char** argv) {
    return jnsharp::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
