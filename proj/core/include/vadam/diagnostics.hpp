#pragma once

#include "vadam/energy.hpp"
#include "vadam/mesh.hpp"
#include "vadam/optim.hpp"
#include "vadam/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vadam {

/// Fixed non-rigid start for deformation experiments: a generic affine map
/// (anisotropic scale + shear) plus a small sinusoidal warp, orientation
/// preserving on the unit disk. Deformation energies evaluated at their own
/// rest configuration have zero gradient, so experiments need a start like
/// this to have anything to optimize. 2D only.
ParamMatrix generic_deformation(const ParamMatrix& rest);

/// Start configuration for an experiment: the mesh vertices, deformed for
/// energies whose minimum is the rest shape itself ("symdir", "arap").
ParamMatrix experiment_start(std::string_view energy_id, const TriMesh& mesh);

/// Rotated-versus-unrotated trajectory comparison.
struct EquivarianceReport {
    std::string optimizer;
    std::string energy;
    Eigen::MatrixXd rotation;
    /// Max-entry |R^-1 p'_t - p*_t| after each step, t = 1..steps.
    std::vector<double> deviation;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool equivariant = false; // max_deviation < tolerance
};

/// Runs `steps` steps twice, from mesh start and from the rotated start,
/// zero-initialized states, identical hyperparameters, and measures the
/// per-step deviation in the original frame (rotated trajectory mapped back
/// through R^-1). The energy must be rotation invariant for the comparison
/// to mean anything; its rest data stays fixed, only the start rotates.
EquivarianceReport check_equivariance(OptimizerKind kind, std::string_view energy_id,
                                      const TriMesh& mesh, int steps,
                                      const Hyper& hyper, const Rotation& r,
                                      double tolerance = 1e-6);

/// Angular distribution of per-vertex update vectors.
struct AngleHistogram {
    int bins = 0;
    std::vector<std::int64_t> counts; // uniform bins over [0, 360) degrees
    std::int64_t total = 0;           // sum of counts
    std::int64_t skipped = 0;         // zero-length updates, not binned
    /// Fraction of samples within +-5 degrees of 45/135/225/315.
    double spike_fraction = 0.0;
    /// max_b |counts[b]/total - 1/bins|.
    double uniformity = 0.0;
};

/// Runs `trials` optimizations of `steps` steps each, every trial starting
/// from the experiment start rotated by a fresh uniform angle, and bins the
/// direction of every per-vertex update vector of every step. 2D only.
AngleHistogram direction_histogram(OptimizerKind kind, std::string_view energy_id,
                                   const TriMesh& mesh, int trials, int steps,
                                   std::uint64_t seed, const Hyper& hyper,
                                   int bins = 36);

/// Shape anisotropy of a shrinking circle/sphere under Laplacian descent.
struct AnisotropyReport {
    /// Per step t = 0..steps: mean vertex radius, and the ratio of mean
    /// radius inside cones around diagonal directions to mean radius inside
    /// cones around axis directions.
    std::vector<double> mean_radius;
    std::vector<double> diagonal_axis_ratio;
    /// First step where mean_radius <= 0.5 * mean_radius[0]; -1 if never.
    int half_radius_step = -1;
};

/// Tracks diagonal-vs-axis mean radius (cone half-angle `cone_deg`) while
/// minimizing the Laplacian energy on a centered circle or sphere mesh.
AnisotropyReport anisotropy_track(OptimizerKind kind, const TriMesh& mesh,
                                  int steps, const Hyper& hyper,
                                  double cone_deg = 10.0);

/// Central-difference gradient verification at random perturbations.
struct GradCheckReport {
    double max_rel_error = 0.0;
    Eigen::Index worst_row = -1;
    Eigen::Index worst_col = -1;
    int probes = 0;
    int failed_probes = 0; // evaluation errors at probe points (skipped)
    double h = 0.0;
};

/// Compares the analytic gradient with (f(p + h e) - f(p - h e)) / 2h per
/// entry at `points` random perturbations of `base`. Per-entry error is
/// |analytic - fd| / max(1, |analytic|, |fd|). A probe where evaluation
/// throws numeric_error is recorded as failed, not fatal.
GradCheckReport gradcheck(const Energy& energy, const ParamMatrix& base,
                          int points, double h, std::uint64_t seed,
                          double perturbation = 0.02);

/// Loss curves across evenly spaced input rotations.
struct SpreadReport {
    /// losses(t, k): loss at step t (0..steps) of rotation k.
    Eigen::MatrixXd losses;
    std::vector<double> angles_rad;
    /// Per step: max-min across rotations, and the same normalized by
    /// (1 + mean loss at that step).
    std::vector<double> spread;
    std::vector<double> normalized_spread;
    double max_normalized_spread = 0.0;
};

/// Optimizes from the experiment start rotated by each of `rotations`
/// evenly spaced angles over [0, 2pi) and reports the per-step spread of
/// the loss curves. 2D only.
SpreadReport rotated_loss_spread(OptimizerKind kind, std::string_view energy_id,
                                 const TriMesh& mesh, int rotations, int steps,
                                 const Hyper& hyper);

} // namespace vadam
