#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    const auto outcome = logdamp::cli::parse_config(argc, argv);
    if (outcome.exit_now >= 0) return outcome.exit_now;
    return logdamp::cli::run(outcome.config, std::cout, std::cerr);
}
