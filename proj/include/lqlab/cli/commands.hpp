#pragma once

#include "lqlab/cli/config.hpp"

namespace lq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

// Executes cfg.command. Exit 1 on a failed hard assertion, 2 on invalid input.
int run(const ExperimentConfig& cfg);

// Parses the command line (with optional --config) and runs it.
int main_entry(int argc, char** argv);

}  // namespace lq::cli
