#include "commands.hpp"

#include "io_util.hpp"

#include "vadam/diagnostics.hpp"
#include "vadam/energy.hpp"
#include "vadam/mesh.hpp"
#include "vadam/optim.hpp"
#include "vadam/tensor.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace vadam::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Hyper hyper_of(const ExperimentConfig& config) {
    Hyper h;
    h.alpha = config.alpha;
    h.beta1 = config.beta1;
    h.beta2 = config.beta2;
    h.epsilon = config.epsilon;
    h.validate();
    return h;
}

ParamMatrix start_of(const ExperimentConfig& config, const TriMesh& mesh) {
    if (config.start == "mesh") return mesh.vertices;
    if (config.start == "deformed") return generic_deformation(mesh.rest());
    return experiment_start(config.energy, mesh);
}

json rotation_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

/// Rotation for the equivariance command: identity override, the fixed
/// witness angle in non-equivariance mode, or Haar-random from the seed.
Rotation pick_rotation(const ExperimentConfig& config, Eigen::Index n) {
    if (config.identity_rotation) return Rotation::identity(n);
    if (config.assert_nonequivariant) {
        const double rad = config.witness_angle_deg * M_PI / 180.0;
        if (n == 2) return Rotation::from_angle(rad);
        return Rotation::from_axis_angle(Eigen::Vector3d(1.0, 2.0, 3.0), rad);
    }
    return random_rotation(n, config.seed);
}

void run_single(const ExperimentConfig& config, const TriMesh& mesh,
                const fs::path& dir) {
    const auto energy = make_energy(config.energy, mesh);
    const Trajectory traj = run(optimizer_from_id(config.optimizer),
                                hyper_of(config), *energy,
                                start_of(config, mesh), config.steps);

    std::ostringstream csv;
    csv << "step,loss\n";
    for (int t = 1; t <= config.steps; ++t) {
        csv << t << ',' << format_double(traj.losses[static_cast<size_t>(t)])
            << '\n';
    }
    atomic_write(dir / "loss.csv", csv.str());

    TriMesh final_mesh = mesh;
    final_mesh.vertices = traj.snapshots.back();
    const fs::path obj_tmp = dir / "final.obj.tmp";
    fs::create_directories(dir);
    save_obj(final_mesh, obj_tmp.string());
    fs::rename(obj_tmp, dir / "final.obj");

    write_json(dir / "config.json", config.to_json());
}

} // namespace

int cmd_run(const ExperimentConfig& config) {
    const TriMesh mesh = make_mesh(config.mesh, config.flatten_z);
    const fs::path out(config.out);
    if (config.alpha_list.empty()) {
        run_single(config, mesh, out);
        return kExitOk;
    }
    json sweep = json::array();
    for (size_t k = 0; k < config.alpha_list.size(); ++k) {
        ExperimentConfig point = config;
        point.alpha = config.alpha_list[k];
        point.alpha_list.clear();
        char name[32];
        std::snprintf(name, sizeof(name), "alpha_%02zu", k);
        point.out = (out / name).string();
        run_single(point, mesh, out / name);
        sweep.push_back({{"alpha", point.alpha}, {"dir", name}});
    }
    write_json(out / "sweep.json", json{{"config", config.to_json()},
                                        {"points", sweep}});
    return kExitOk;
}

int cmd_equivariance(const ExperimentConfig& config) {
    const TriMesh mesh = make_mesh(config.mesh, config.flatten_z);
    const Rotation rotation = pick_rotation(config, mesh.dim());
    const EquivarianceReport report = check_equivariance(
        optimizer_from_id(config.optimizer), config.energy, mesh, config.steps,
        hyper_of(config), rotation, config.tolerance);

    const fs::path out(config.out);
    std::ostringstream csv;
    csv << "step,deviation\n";
    for (size_t t = 0; t < report.deviation.size(); ++t) {
        csv << (t + 1) << ',' << format_double(report.deviation[t]) << '\n';
    }
    atomic_write(out / "deviation.csv", csv.str());

    const bool pass = config.assert_nonequivariant
                          ? report.max_deviation > config.nonequiv_threshold
                          : report.equivariant;
    write_json(out / "report.json",
               json{{"optimizer", report.optimizer},
                    {"energy", report.energy},
                    {"rotation", rotation_to_json(report.rotation)},
                    {"max_deviation", report.max_deviation},
                    {"tolerance", report.tolerance},
                    {"nonequiv_threshold", config.nonequiv_threshold},
                    {"mode", config.assert_nonequivariant ? "assert-nonequivariant"
                                                          : "assert-equivariant"},
                    {"pass", pass},
                    {"config", config.to_json()}});
    std::cout << (pass ? "PASS" : "FAIL") << ": max deviation "
              << format_double(report.max_deviation) << " over " << config.steps
              << " steps\n";
    return pass ? kExitOk : kExitAssertion;
}

int cmd_histogram(const ExperimentConfig& config) {
    const TriMesh mesh = make_mesh(config.mesh, config.flatten_z);
    const OptimizerKind kind = optimizer_from_id(config.optimizer);
    const AngleHistogram hist =
        direction_histogram(kind, config.energy, mesh, config.trials,
                            config.steps, config.seed, hyper_of(config),
                            config.bins);

    const fs::path out(config.out);
    std::ostringstream csv;
    csv << "bin_start_deg,bin_end_deg,count,frequency\n";
    const double width = 360.0 / config.bins;
    for (int b = 0; b < config.bins; ++b) {
        const double freq =
            hist.total > 0 ? static_cast<double>(hist.counts[static_cast<size_t>(b)]) /
                                 static_cast<double>(hist.total)
                           : 0.0;
        csv << format_double(b * width) << ',' << format_double((b + 1) * width)
            << ',' << hist.counts[static_cast<size_t>(b)] << ','
            << format_double(freq) << '\n';
    }
    atomic_write(out / "histogram.csv", csv.str());

    // Adam's claim is the diagonal spike; the equivariant optimizers' claim
    // is uniformity.
    const bool spiky_claim = kind == OptimizerKind::Adam;
    const bool pass = spiky_claim ? hist.spike_fraction > config.spike_threshold
                                  : hist.uniformity < config.uniformity_threshold;
    write_json(out / "metrics.json",
               json{{"optimizer", config.optimizer},
                    {"energy", config.energy},
                    {"spike_fraction", hist.spike_fraction},
                    {"uniformity", hist.uniformity},
                    {"total", hist.total},
                    {"skipped", hist.skipped},
                    {"spike_threshold", config.spike_threshold},
                    {"uniformity_threshold", config.uniformity_threshold},
                    {"assertion", spiky_claim ? "spike_fraction > spike_threshold"
                                              : "uniformity < uniformity_threshold"},
                    {"pass", pass},
                    {"config", config.to_json()}});
    std::cout << (pass ? "PASS" : "FAIL") << ": spike "
              << format_double(hist.spike_fraction) << ", uniformity "
              << format_double(hist.uniformity) << " over " << hist.total
              << " samples\n";
    return pass ? kExitOk : kExitAssertion;
}

int cmd_gradcheck(const ExperimentConfig& config) {
    struct Case {
        std::string energy;
        std::string mesh;
        double tolerance;
    };
    // Per-energy tolerances; the quadratic is exact under central
    // differences up to roundoff, ARAP's rotation fit costs one extra digit.
    std::vector<Case> cases;
    auto default_mesh = [](const std::string& energy) -> std::string {
        if (energy == "laplacian") return "circle:64";
        if (energy == "arap") return "disk:8";
        return "disk:2";
    };
    auto default_tolerance = [](const std::string& energy) {
        if (energy == "quad") return 1e-9;
        if (energy == "arap") return 1e-4;
        return 1e-5;
    };
    if (config.energy == "all") {
        for (const char* id : {"quad", "laplacian", "symdir", "arap"}) {
            cases.push_back({id, default_mesh(id), default_tolerance(id)});
        }
    } else {
        cases.push_back({config.energy,
                         config.mesh.empty() ? default_mesh(config.energy)
                                             : config.mesh,
                         default_tolerance(config.energy)});
    }

    bool all_pass = true;
    json table = json::array();
    for (const auto& c : cases) {
        const TriMesh mesh = make_mesh(c.mesh, config.flatten_z);
        const auto energy = make_energy(c.energy, mesh);
        const GradCheckReport report = gradcheck(
            *energy, mesh.rest(), config.points, config.h, config.seed);
        const bool pass =
            report.failed_probes == 0 && report.max_rel_error < c.tolerance;
        all_pass = all_pass && pass;
        table.push_back({{"energy", c.energy},
                         {"mesh", c.mesh},
                         {"max_rel_error", report.max_rel_error},
                         {"worst_row", report.worst_row},
                         {"worst_col", report.worst_col},
                         {"probes", report.probes},
                         {"failed_probes", report.failed_probes},
                         {"tolerance", c.tolerance},
                         {"pass", pass}});
        std::cout << (pass ? "PASS" : "FAIL") << ": " << c.energy << " on "
                  << c.mesh << " max rel error "
                  << format_double(report.max_rel_error) << " (tolerance "
                  << format_double(c.tolerance) << ")\n";
    }
    write_json(fs::path(config.out) / "gradcheck.json",
               json{{"results", table},
                    {"pass", all_pass},
                    {"config", config.to_json()}});
    return all_pass ? kExitOk : kExitAssertion;
}

int cmd_spread(const ExperimentConfig& config) {
    const TriMesh mesh = make_mesh(config.mesh, config.flatten_z);
    const SpreadReport report = rotated_loss_spread(
        optimizer_from_id(config.optimizer), config.energy, mesh,
        config.rotations, config.steps, hyper_of(config));

    const fs::path out(config.out);
    std::ostringstream spread_csv;
    spread_csv << "step,min,max,mean,spread,normalized_spread\n";
    for (int t = 0; t <= config.steps; ++t) {
        spread_csv << t << ',' << format_double(report.losses.row(t).minCoeff())
                   << ',' << format_double(report.losses.row(t).maxCoeff())
                   << ',' << format_double(report.losses.row(t).mean()) << ','
                   << format_double(report.spread[static_cast<size_t>(t)]) << ','
                   << format_double(
                          report.normalized_spread[static_cast<size_t>(t)])
                   << '\n';
    }
    atomic_write(out / "spread.csv", spread_csv.str());

    std::ostringstream curves_csv;
    curves_csv << "step";
    for (int k = 0; k < config.rotations; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), ",loss_rot%02d", k);
        curves_csv << name;
    }
    curves_csv << '\n';
    for (int t = 0; t <= config.steps; ++t) {
        curves_csv << t;
        for (int k = 0; k < config.rotations; ++k) {
            curves_csv << ',' << format_double(report.losses(t, k));
        }
        curves_csv << '\n';
    }
    atomic_write(out / "curves.csv", curves_csv.str());

    const bool pass = config.assert_varies
                          ? report.max_normalized_spread >
                                config.spread_witness_threshold
                          : report.max_normalized_spread < config.spread_threshold;
    write_json(out / "report.json",
               json{{"optimizer", config.optimizer},
                    {"energy", config.energy},
                    {"max_normalized_spread", report.max_normalized_spread},
                    {"spread_threshold", config.spread_threshold},
                    {"spread_witness_threshold", config.spread_witness_threshold},
                    {"mode", config.assert_varies ? "assert-varies"
                                                  : "assert-collapsed"},
                    {"pass", pass},
                    {"config", config.to_json()}});
    std::cout << (pass ? "PASS" : "FAIL") << ": max normalized spread "
              << format_double(report.max_normalized_spread) << " across "
              << config.rotations << " rotations\n";
    return pass ? kExitOk : kExitAssertion;
}

} // namespace vadam::cli
