#include "experiment_config.hpp"

#include "vadam/energy.hpp"
#include "vadam/mesh.hpp"
#include "vadam/optim.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <stdexcept>

namespace vadam::cli {

void ExperimentConfig::apply_json(const nlohmann::json& file) {
    static const std::set<std::string> known = {
        "optimizer", "energy", "mesh", "steps", "seed", "alpha", "beta1",
        "beta2", "epsilon", "out", "start", "flatten_z", "alpha_list",
        "tolerance", "nonequiv_threshold", "witness_angle_deg",
        "assert_nonequivariant", "identity_rotation", "trials", "bins",
        "spike_threshold", "uniformity_threshold", "points", "h", "rotations",
        "spread_threshold", "spread_witness_threshold", "assert_varies"};
    for (const auto& [key, value] : file.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("config: unknown field '" + key + "'");
        }
        (void)value;
    }
    auto get = [&file](const char* key, auto& field) {
        if (file.contains(key)) {
            file.at(key).get_to(field);
        }
    };
    get("optimizer", optimizer);
    get("energy", energy);
    get("mesh", mesh);
    get("steps", steps);
    get("seed", seed);
    get("alpha", alpha);
    get("beta1", beta1);
    get("beta2", beta2);
    get("epsilon", epsilon);
    get("out", out);
    get("start", start);
    get("flatten_z", flatten_z);
    get("alpha_list", alpha_list);
    get("tolerance", tolerance);
    get("nonequiv_threshold", nonequiv_threshold);
    get("witness_angle_deg", witness_angle_deg);
    get("assert_nonequivariant", assert_nonequivariant);
    get("identity_rotation", identity_rotation);
    get("trials", trials);
    get("bins", bins);
    get("spike_threshold", spike_threshold);
    get("uniformity_threshold", uniformity_threshold);
    get("points", points);
    get("h", h);
    get("rotations", rotations);
    get("spread_threshold", spread_threshold);
    get("spread_witness_threshold", spread_witness_threshold);
    get("assert_varies", assert_varies);
}

void ExperimentConfig::validate() const {
    if (energy != "all") {
        vadam::optimizer_from_id(optimizer); // throws naming the optimizer
    }
    if (energy != "all" && energy != "laplacian" && energy != "symdir" &&
        energy != "arap" && energy != "quad") {
        throw std::invalid_argument("config: unknown energy '" + energy + "'");
    }
    if (steps < 1) {
        throw std::invalid_argument("config: steps must be >= 1");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("config: alpha must be > 0");
    }
    for (double a : alpha_list) {
        if (!(a > 0.0)) {
            throw std::invalid_argument("config: alpha_list entries must be > 0");
        }
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("config: beta1/beta2 must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("config: epsilon must be > 0");
    }
    if (start != "auto" && start != "mesh" && start != "deformed") {
        throw std::invalid_argument("config: start must be auto | mesh | deformed");
    }
    if (trials < 1 || bins < 1 || points < 1 || rotations < 1) {
        throw std::invalid_argument(
            "config: trials, bins, points and rotations must be >= 1");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("config: h must be > 0");
    }
    if (out.empty()) {
        throw std::invalid_argument("config: out directory must not be empty");
    }
}

nlohmann::json ExperimentConfig::to_json() const {
    return nlohmann::json{{"optimizer", optimizer},
                          {"energy", energy},
                          {"mesh", mesh},
                          {"steps", steps},
                          {"seed", seed},
                          {"alpha", alpha},
                          {"beta1", beta1},
                          {"beta2", beta2},
                          {"epsilon", epsilon},
                          {"out", out},
                          {"start", start},
                          {"flatten_z", flatten_z},
                          {"alpha_list", alpha_list},
                          {"tolerance", tolerance},
                          {"nonequiv_threshold", nonequiv_threshold},
                          {"witness_angle_deg", witness_angle_deg},
                          {"assert_nonequivariant", assert_nonequivariant},
                          {"identity_rotation", identity_rotation},
                          {"trials", trials},
                          {"bins", bins},
                          {"spike_threshold", spike_threshold},
                          {"uniformity_threshold", uniformity_threshold},
                          {"points", points},
                          {"h", h},
                          {"rotations", rotations},
                          {"spread_threshold", spread_threshold},
                          {"spread_witness_threshold", spread_witness_threshold},
                          {"assert_varies", assert_varies}};
}

} // namespace vadam::cli
