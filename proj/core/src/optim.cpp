#include "vadam/optim.hpp"

#include "vadam/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vadam {

namespace {

void check_same_shape(const ParamMatrix& p, const ParamMatrix& g,
                      const char* who) {
    if (p.rows() != g.rows() || p.cols() != g.cols()) {
        throw std::invalid_argument(
            std::string(who) + ": parameter shape (" + std::to_string(p.rows()) +
            "x" + std::to_string(p.cols()) + ") does not match gradient shape (" +
            std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ")");
    }
}

void check_finite_gradient(const ParamMatrix& g, const char* who) {
    if (g.allFinite()) return;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        if (!g.row(i).allFinite()) {
            throw numeric_error(std::string(who) +
                                ": non-finite gradient in row " +
                                std::to_string(i));
        }
    }
}

} // namespace

void Hyper::validate() const {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("Hyper: alpha must be > 0");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("Hyper: beta1 and beta2 must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("Hyper: epsilon must be > 0");
    }
}

AdamState AdamState::zero(Eigen::Index rows, Eigen::Index cols) {
    return {ParamMatrix::Zero(rows, cols), ParamMatrix::Zero(rows, cols), 0};
}

VectorAdamState VectorAdamState::zero(Eigen::Index rows, Eigen::Index cols) {
    return {ParamMatrix::Zero(rows, cols), Eigen::VectorXd::Zero(rows), 0};
}

InfVectorAdamState InfVectorAdamState::zero(Eigen::Index rows,
                                            Eigen::Index cols) {
    return {ParamMatrix::Zero(rows, cols), 0.0, 0};
}

ParamMatrix gd_step(const ParamMatrix& p, const ParamMatrix& g, double alpha) {
    check_same_shape(p, g, "gd_step");
    check_finite_gradient(g, "gd_step");
    return p - alpha * g;
}

ParamMatrix adam_step(const ParamMatrix& p, const ParamMatrix& g, AdamState& s,
                      const Hyper& h) {
    check_same_shape(p, g, "adam_step");
    check_same_shape(p, s.m, "adam_step(state m)");
    check_same_shape(p, s.v, "adam_step(state v)");
    check_finite_gradient(g, "adam_step");
    h.validate();

    s.t += 1;
    const double t = static_cast<double>(s.t);
    s.m = h.beta1 * s.m + (1.0 - h.beta1) * g;
    s.v = h.beta2 * s.v + (1.0 - h.beta2) * g.cwiseProduct(g);

    const double bc1 = 1.0 - std::pow(h.beta1, t);
    const double bc2 = 1.0 - std::pow(h.beta2, t);
    const ParamMatrix mhat = s.m / bc1;
    const ParamMatrix vhat = s.v / bc2;
    return p - h.alpha *
                   (mhat.array() / (vhat.array().sqrt() + h.epsilon)).matrix();
}

ParamMatrix vector_adam_step(const ParamMatrix& p, const ParamMatrix& g,
                             VectorAdamState& s, const Hyper& h) {
    check_same_shape(p, g, "vector_adam_step");
    check_same_shape(p, s.m, "vector_adam_step(state m)");
    if (s.v.size() != p.rows()) {
        throw std::invalid_argument(
            "vector_adam_step: second moment must hold one scalar per row");
    }
    check_finite_gradient(g, "vector_adam_step");
    h.validate();

    s.t += 1;
    const double t = static_cast<double>(s.t);
    s.m = h.beta1 * s.m + (1.0 - h.beta1) * g;
    s.v = h.beta2 * s.v + (1.0 - h.beta2) * g.rowwise().squaredNorm();

    // Same per-scalar operation order as adam_step so the n=1 case
    // reproduces Adam exactly, not merely to rounding.
    const double bc1 = 1.0 - std::pow(h.beta1, t);
    const double bc2 = 1.0 - std::pow(h.beta2, t);
    ParamMatrix out = p;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double denom = std::sqrt(s.v(i) / bc2) + h.epsilon;
        out.row(i) -= h.alpha * ((s.m.row(i) / bc1) / denom);
    }
    return out;
}

ParamMatrix vector_adam_inf_step(const ParamMatrix& p, const ParamMatrix& g,
                                 InfVectorAdamState& s, const Hyper& h) {
    check_same_shape(p, g, "vector_adam_inf_step");
    check_same_shape(p, s.m, "vector_adam_inf_step(state m)");
    check_finite_gradient(g, "vector_adam_inf_step");
    h.validate();

    s.t += 1;
    const double t = static_cast<double>(s.t);
    s.m = h.beta1 * s.m + (1.0 - h.beta1) * g;
    // max of squared norms == squared max norm, without the sqrt round-trip,
    // so the m=1 case matches vector_adam_step exactly.
    const double max_sq = g.rowwise().squaredNorm().maxCoeff();
    s.v = h.beta2 * s.v + (1.0 - h.beta2) * max_sq;

    const double bc1 = 1.0 - std::pow(h.beta1, t);
    const double bc2 = 1.0 - std::pow(h.beta2, t);
    const double denom = std::sqrt(s.v / bc2) + h.epsilon;
    return p - h.alpha * ((s.m / bc1) / denom);
}

OptimizerKind optimizer_from_id(std::string_view id) {
    if (id == "gd") return OptimizerKind::Gd;
    if (id == "adam") return OptimizerKind::Adam;
    if (id == "vectoradam") return OptimizerKind::VectorAdam;
    if (id == "vectoradam-inf") return OptimizerKind::VectorAdamInf;
    throw std::invalid_argument(
        "unknown optimizer '" + std::string(id) +
        "' (expected gd | adam | vectoradam | vectoradam-inf)");
}

std::string optimizer_id(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::Gd: return "gd";
        case OptimizerKind::Adam: return "adam";
        case OptimizerKind::VectorAdam: return "vectoradam";
        case OptimizerKind::VectorAdamInf: return "vectoradam-inf";
    }
    throw std::invalid_argument("optimizer_id: bad kind");
}

Optimizer::Optimizer(OptimizerKind kind, const Hyper& h, Eigen::Index rows,
                     Eigen::Index cols)
    : kind_(kind), hyper_(h) {
    hyper_.validate();
    switch (kind_) {
        case OptimizerKind::Gd: state_ = std::monostate{}; break;
        case OptimizerKind::Adam: state_ = AdamState::zero(rows, cols); break;
        case OptimizerKind::VectorAdam:
            state_ = VectorAdamState::zero(rows, cols);
            break;
        case OptimizerKind::VectorAdamInf:
            state_ = InfVectorAdamState::zero(rows, cols);
            break;
    }
}

ParamMatrix Optimizer::step(const ParamMatrix& p, const ParamMatrix& g) {
    switch (kind_) {
        case OptimizerKind::Gd: return gd_step(p, g, hyper_.alpha);
        case OptimizerKind::Adam:
            return adam_step(p, g, std::get<AdamState>(state_), hyper_);
        case OptimizerKind::VectorAdam:
            return vector_adam_step(p, g, std::get<VectorAdamState>(state_),
                                    hyper_);
        case OptimizerKind::VectorAdamInf:
            return vector_adam_inf_step(
                p, g, std::get<InfVectorAdamState>(state_), hyper_);
    }
    throw std::invalid_argument("Optimizer::step: bad kind");
}

Trajectory run(OptimizerKind kind, const Hyper& h, const Energy& energy,
               const ParamMatrix& p0, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("run: steps must be >= 1");
    }
    if (energy.rows() != p0.rows() || energy.cols() != p0.cols()) {
        throw std::invalid_argument("run: energy domain does not match p0 shape");
    }
    Optimizer opt(kind, h, p0.rows(), p0.cols());
    Trajectory traj;
    traj.snapshots.reserve(static_cast<size_t>(steps) + 1);
    traj.losses.reserve(static_cast<size_t>(steps) + 1);
    traj.snapshots.push_back(p0);
    ParamMatrix p = p0;
    for (int t = 0; t < steps; ++t) {
        try {
            traj.losses.push_back(energy.value(p));
            const ParamMatrix g = energy.gradient(p);
            p = opt.step(p, g);
        } catch (const numeric_error& e) {
            throw numeric_error("step " + std::to_string(t + 1) + ": " + e.what());
        }
        traj.snapshots.push_back(p);
    }
    try {
        traj.losses.push_back(energy.value(p));
    } catch (const numeric_error& e) {
        throw numeric_error("step " + std::to_string(steps) + ": " + e.what());
    }
    return traj;
}

} // namespace vadam
