#include "vadam/energy.hpp"
#include "vadam/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace vadam {

ArapEnergy::ArapEnergy(const TriMesh& mesh) : rows_(mesh.vertex_count()) {
    mesh.validate();
    if (mesh.dim() != 2) {
        throw std::invalid_argument("ArapEnergy: mesh must be 2D");
    }
    if (mesh.triangles.empty()) {
        throw std::invalid_argument("ArapEnergy: mesh has no triangles");
    }
    rest_ = mesh.rest();
    neighbors_ = mesh.adjacency();
    for (size_t i = 0; i < neighbors_.size(); ++i) {
        if (neighbors_[i].empty()) {
            throw std::invalid_argument("ArapEnergy: vertex " +
                                        std::to_string(i) + " is isolated");
        }
    }
}

std::vector<Eigen::Matrix2d> ArapEnergy::fit_rotations(
    const ParamMatrix& p) const {
    check_shape(p);
    std::vector<Eigen::Matrix2d> rot(static_cast<size_t>(rows_));
    for (Eigen::Index i = 0; i < rows_; ++i) {
        // Local covariance S = sum_j ehat e^T, best rotation maximizes
        // tr(R S): with R = [c -s; s c], tr(R S) = c*tr(S) + s*(S01 - S10),
        // so (c, s) is the normalized (tr S, S01 - S10).
        Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
        for (int j : neighbors_[static_cast<size_t>(i)]) {
            const Eigen::Vector2d ehat = (rest_.row(i) - rest_.row(j)).transpose();
            const Eigen::Vector2d e = (p.row(i) - p.row(j)).transpose();
            S += ehat * e.transpose();
        }
        const double a = S(0, 0) + S(1, 1);
        const double b = S(0, 1) - S(1, 0);
        const double len = std::hypot(a, b);
        Eigen::Matrix2d& R = rot[static_cast<size_t>(i)];
        if (len == 0.0) {
            R.setIdentity(); // fully degenerate fit; any rotation is optimal
        } else {
            const double c = a / len, s = b / len;
            R << c, -s, s, c;
        }
    }
    return rot;
}

double ArapEnergy::value(const ParamMatrix& p) const {
    const auto rot = fit_rotations(p);
    // The (i,j) and (j,i) spoke terms share the edge vector up to sign, so
    // one pass over undirected edges covers both.
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
        for (int j : neighbors_[static_cast<size_t>(i)]) {
            if (j <= i) continue;
            const Eigen::Vector2d ehat = (rest_.row(i) - rest_.row(j)).transpose();
            const Eigen::Vector2d e = (p.row(i) - p.row(j)).transpose();
            total += (e - rot[static_cast<size_t>(i)] * ehat).squaredNorm() +
                     (e - rot[static_cast<size_t>(j)] * ehat).squaredNorm();
        }
    }
    return total;
}

ParamMatrix ArapEnergy::gradient(const ParamMatrix& p) const {
    // Envelope theorem: each R_i minimizes the energy over SO(2), so the
    // derivative through R_i vanishes and the rotations are held fixed.
    const auto rot = fit_rotations(p);
    ParamMatrix grad = ParamMatrix::Zero(rows_, 2);
    for (Eigen::Index i = 0; i < rows_; ++i) {
        for (int j : neighbors_[static_cast<size_t>(i)]) {
            if (j <= i) continue;
            const Eigen::Vector2d ehat = (rest_.row(i) - rest_.row(j)).transpose();
            const Eigen::Vector2d e = (p.row(i) - p.row(j)).transpose();
            const Eigen::Vector2d residual_sum =
                (e - rot[static_cast<size_t>(i)] * ehat) +
                (e - rot[static_cast<size_t>(j)] * ehat);
            grad.row(i) += 2.0 * residual_sum.transpose();
            grad.row(j) -= 2.0 * residual_sum.transpose();
        }
    }
    return grad;
}

} // namespace vadam
