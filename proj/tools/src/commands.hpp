#pragma once

#include "experiment_config.hpp"

namespace vadam::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitAssertion = 2;
inline constexpr int kExitNumeric = 3;

int cmd_run(const ExperimentConfig& config);
int cmd_equivariance(const ExperimentConfig& config);
int cmd_histogram(const ExperimentConfig& config);
int cmd_gradcheck(const ExperimentConfig& config);
int cmd_spread(const ExperimentConfig& config);

} // namespace vadam::cli
