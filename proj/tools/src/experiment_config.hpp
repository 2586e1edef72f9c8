#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace vadam::cli {

/// Resolved experiment configuration. Values come from per-subcommand
/// defaults, then a JSON config file, then command-line flags; later
/// sources win.
struct ExperimentConfig {
    std::string optimizer = "vectoradam";
    std::string energy = "laplacian";
    std::string mesh = "circle:64";
    int steps = 100;
    std::uint64_t seed = 1;
    double alpha = 1e-2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::string out = "out";
    std::string start = "auto"; // auto | mesh | deformed
    bool flatten_z = false;
    std::vector<double> alpha_list; // run: learning-rate sweep

    // equivariance
    double tolerance = 1e-6;
    double nonequiv_threshold = 1e-3;
    double witness_angle_deg = 30.0;
    bool assert_nonequivariant = false;
    bool identity_rotation = false;

    // histogram
    int trials = 100;
    int bins = 36;
    double spike_threshold = 0.5;
    double uniformity_threshold = 0.1;

    // gradcheck
    int points = 20;
    double h = 1e-6;

    // spread
    int rotations = 16;
    double spread_threshold = 1e-6;
    double spread_witness_threshold = 1e-3;
    bool assert_varies = false;

    /// Applies the keys present in a config file. Unknown keys are an error
    /// (exit code 1 at the CLI boundary).
    void apply_json(const nlohmann::json& file);

    /// Sanity of ids and ranges; throws std::invalid_argument naming the
    /// offending field.
    void validate() const;

    /// Full resolved config as JSON, embedded in every JSON output.
    nlohmann::json to_json() const;
};

} // namespace vadam::cli
