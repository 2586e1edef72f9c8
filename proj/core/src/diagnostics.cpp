#include "vadam/diagnostics.hpp"

#include "vadam/errors.hpp"
#include "vadam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vadam {

ParamMatrix generic_deformation(const ParamMatrix& rest) {
    if (rest.cols() != 2) {
        throw std::invalid_argument("generic_deformation: 2D configurations only");
    }
    Eigen::Matrix2d affine;
    affine << 1.25, 0.20, -0.10, 0.85;
    ParamMatrix out(rest.rows(), 2);
    for (Eigen::Index i = 0; i < rest.rows(); ++i) {
        const double x = rest(i, 0), y = rest(i, 1);
        const Eigen::Vector2d q = affine * Eigen::Vector2d(x, y);
        out(i, 0) = q.x() + 0.05 * std::sin(3.0 * y);
        out(i, 1) = q.y() + 0.05 * std::cos(2.0 * x);
    }
    return out;
}

ParamMatrix experiment_start(std::string_view energy_id, const TriMesh& mesh) {
    if (energy_id == "symdir" || energy_id == "arap") {
        return generic_deformation(mesh.rest());
    }
    return mesh.vertices;
}

EquivarianceReport check_equivariance(OptimizerKind kind,
                                      std::string_view energy_id,
                                      const TriMesh& mesh, int steps,
                                      const Hyper& hyper, const Rotation& r,
                                      double tolerance) {
    const auto energy = make_energy(energy_id, mesh);
    const ParamMatrix start = experiment_start(energy_id, mesh);
    const Trajectory base = run(kind, hyper, *energy, start, steps);
    const Trajectory rotated =
        run(kind, hyper, *energy, apply_rotation(r, start), steps);

    EquivarianceReport report;
    report.optimizer = optimizer_id(kind);
    report.energy = std::string(energy_id);
    report.rotation = r.matrix();
    report.tolerance = tolerance;
    const Rotation r_inv = r.inverse();
    report.deviation.reserve(static_cast<size_t>(steps));
    for (int t = 1; t <= steps; ++t) {
        const ParamMatrix back =
            apply_rotation(r_inv, rotated.snapshots[static_cast<size_t>(t)]);
        const double dev =
            (back - base.snapshots[static_cast<size_t>(t)]).cwiseAbs().maxCoeff();
        report.deviation.push_back(dev);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    report.equivariant = report.max_deviation < tolerance;
    return report;
}

AngleHistogram direction_histogram(OptimizerKind kind,
                                   std::string_view energy_id,
                                   const TriMesh& mesh, int trials, int steps,
                                   std::uint64_t seed, const Hyper& hyper,
                                   int bins) {
    if (mesh.dim() != 2) {
        throw std::invalid_argument("direction_histogram: 2D meshes only");
    }
    if (trials < 1 || steps < 1 || bins < 1) {
        throw std::invalid_argument(
            "direction_histogram: trials, steps and bins must be >= 1");
    }
    const auto energy = make_energy(energy_id, mesh);
    const ParamMatrix base = experiment_start(energy_id, mesh);

    AngleHistogram hist;
    hist.bins = bins;
    hist.counts.assign(static_cast<size_t>(bins), 0);
    std::int64_t spikes = 0;
    Rng rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        const Rotation r = Rotation::from_angle(rng.uniform(0.0, 2.0 * M_PI));
        ParamMatrix p = apply_rotation(r, base);
        Optimizer opt(kind, hyper, p.rows(), p.cols());
        for (int t = 0; t < steps; ++t) {
            ParamMatrix next;
            try {
                next = opt.step(p, energy->gradient(p));
            } catch (const numeric_error& e) {
                throw numeric_error("trial " + std::to_string(trial) + ", step " +
                                    std::to_string(t + 1) + ": " + e.what());
            }
            for (Eigen::Index i = 0; i < p.rows(); ++i) {
                const double dx = next(i, 0) - p(i, 0);
                const double dy = next(i, 1) - p(i, 1);
                if (dx == 0.0 && dy == 0.0) {
                    ++hist.skipped;
                    continue;
                }
                double deg = std::atan2(dy, dx) * 180.0 / M_PI;
                if (deg < 0.0) deg += 360.0;
                int b = static_cast<int>(deg / (360.0 / bins));
                b = std::min(b, bins - 1);
                ++hist.counts[static_cast<size_t>(b)];
                ++hist.total;
                // Distance to the nearest odd multiple of 45 degrees.
                const double m90 = std::fmod(deg, 90.0);
                if (std::abs(m90 - 45.0) <= 5.0) ++spikes;
            }
            p = std::move(next);
        }
    }

    if (hist.total > 0) {
        hist.spike_fraction =
            static_cast<double>(spikes) / static_cast<double>(hist.total);
        const double expected = 1.0 / static_cast<double>(bins);
        for (const auto c : hist.counts) {
            const double freq =
                static_cast<double>(c) / static_cast<double>(hist.total);
            hist.uniformity = std::max(hist.uniformity, std::abs(freq - expected));
        }
    }
    return hist;
}

namespace {

// Unit directions of the coordinate axes and of the +-1 diagonals for n=2/3.
std::vector<Eigen::VectorXd> axis_directions(Eigen::Index n) {
    std::vector<Eigen::VectorXd> dirs;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        d(k) = 1.0;
        dirs.push_back(d);
        dirs.push_back(-d);
    }
    return dirs;
}

std::vector<Eigen::VectorXd> diagonal_directions(Eigen::Index n) {
    std::vector<Eigen::VectorXd> dirs;
    const int count = 1 << n;
    for (int mask = 0; mask < count; ++mask) {
        Eigen::VectorXd d(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            d(k) = (mask >> k) & 1 ? 1.0 : -1.0;
        }
        dirs.push_back(d.normalized());
    }
    return dirs;
}

// Mean radius over vertices whose direction lies within `cos_min` of any
// direction in `dirs`; NaN when the cone set is empty.
double cone_mean_radius(const ParamMatrix& p,
                        const std::vector<Eigen::VectorXd>& dirs,
                        double cos_min) {
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double radius = p.row(i).norm();
        if (radius == 0.0) continue;
        for (const auto& d : dirs) {
            if (p.row(i).dot(d) / radius >= cos_min) {
                sum += radius;
                ++count;
                break;
            }
        }
    }
    return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

AnisotropyReport anisotropy_track(OptimizerKind kind, const TriMesh& mesh,
                                  int steps, const Hyper& hyper,
                                  double cone_deg) {
    const LaplacianEnergy energy(mesh);
    const double cos_min = std::cos(cone_deg * M_PI / 180.0);
    const auto axes = axis_directions(mesh.dim());
    const auto diagonals = diagonal_directions(mesh.dim());

    // Streams the optimization instead of using run(): shrink-to-half can
    // take hundreds of thousands of steps, far too many to keep snapshots.
    AnisotropyReport report;
    report.mean_radius.reserve(static_cast<size_t>(steps) + 1);
    report.diagonal_axis_ratio.reserve(static_cast<size_t>(steps) + 1);
    Optimizer opt(kind, hyper, mesh.vertex_count(), mesh.dim());
    ParamMatrix p = mesh.vertices;
    auto record = [&](const ParamMatrix& q) {
        report.mean_radius.push_back(row_norms(q).mean());
        const double diag = cone_mean_radius(q, diagonals, cos_min);
        const double axis = cone_mean_radius(q, axes, cos_min);
        report.diagonal_axis_ratio.push_back(diag / axis);
    };
    record(p);
    for (int t = 1; t <= steps; ++t) {
        try {
            p = opt.step(p, energy.gradient(p));
        } catch (const numeric_error& e) {
            throw numeric_error("step " + std::to_string(t) + ": " + e.what());
        }
        record(p);
    }
    const double half = 0.5 * report.mean_radius.front();
    for (size_t t = 0; t < report.mean_radius.size(); ++t) {
        if (report.mean_radius[t] <= half) {
            report.half_radius_step = static_cast<int>(t);
            break;
        }
    }
    return report;
}

GradCheckReport gradcheck(const Energy& energy, const ParamMatrix& base,
                          int points, double h, std::uint64_t seed,
                          double perturbation) {
    if (points < 1) {
        throw std::invalid_argument("gradcheck: points must be >= 1");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("gradcheck: h must be > 0");
    }
    Rng rng(seed);
    GradCheckReport report;
    report.h = h;
    for (int probe = 0; probe < points; ++probe) {
        ParamMatrix p = base;
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            for (Eigen::Index j = 0; j < p.cols(); ++j) {
                p(i, j) += rng.uniform(-perturbation, perturbation);
            }
        }
        try {
            const ParamMatrix analytic = energy.gradient(p);
            for (Eigen::Index i = 0; i < p.rows(); ++i) {
                for (Eigen::Index j = 0; j < p.cols(); ++j) {
                    const double saved = p(i, j);
                    p(i, j) = saved + h;
                    const double fp = energy.value(p);
                    p(i, j) = saved - h;
                    const double fm = energy.value(p);
                    p(i, j) = saved;
                    const double fd = (fp - fm) / (2.0 * h);
                    const double denom =
                        std::max({1.0, std::abs(analytic(i, j)), std::abs(fd)});
                    const double rel = std::abs(analytic(i, j) - fd) / denom;
                    if (rel > report.max_rel_error) {
                        report.max_rel_error = rel;
                        report.worst_row = i;
                        report.worst_col = j;
                    }
                }
            }
            ++report.probes;
        } catch (const numeric_error&) {
            ++report.failed_probes;
        }
    }
    return report;
}

SpreadReport rotated_loss_spread(OptimizerKind kind, std::string_view energy_id,
                                 const TriMesh& mesh, int rotations, int steps,
                                 const Hyper& hyper) {
    if (mesh.dim() != 2) {
        throw std::invalid_argument("rotated_loss_spread: 2D meshes only");
    }
    if (rotations < 1) {
        throw std::invalid_argument("rotated_loss_spread: rotations must be >= 1");
    }
    const auto energy = make_energy(energy_id, mesh);
    const ParamMatrix base = experiment_start(energy_id, mesh);

    SpreadReport report;
    report.losses.resize(steps + 1, rotations);
    for (int k = 0; k < rotations; ++k) {
        const double angle = 2.0 * M_PI * k / rotations;
        report.angles_rad.push_back(angle);
        const Rotation r = Rotation::from_angle(angle);
        Trajectory traj;
        try {
            traj = run(kind, hyper, *energy, apply_rotation(r, base), steps);
        } catch (const numeric_error& e) {
            throw numeric_error("rotation " + std::to_string(k) + ": " + e.what());
        }
        for (int t = 0; t <= steps; ++t) {
            report.losses(t, k) = traj.losses[static_cast<size_t>(t)];
        }
    }
    report.spread.reserve(static_cast<size_t>(steps) + 1);
    report.normalized_spread.reserve(static_cast<size_t>(steps) + 1);
    for (int t = 0; t <= steps; ++t) {
        const double lo = report.losses.row(t).minCoeff();
        const double hi = report.losses.row(t).maxCoeff();
        const double mean = report.losses.row(t).mean();
        report.spread.push_back(hi - lo);
        report.normalized_spread.push_back((hi - lo) / (1.0 + mean));
        report.max_normalized_spread =
            std::max(report.max_normalized_spread, report.normalized_spread.back());
    }
    return report;
}

} // namespace vadam
