#include "vadam/energy.hpp"
#include "vadam/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>

namespace vadam {

namespace {
// Deformed triangles with signed area below this fraction of the rest area
// count as degenerate/inverted.
constexpr double kMinAreaRatio = 1e-12;
} // namespace

SymmetricDirichletEnergy::SymmetricDirichletEnergy(const TriMesh& mesh)
    : rows_(mesh.vertex_count()) {
    mesh.validate();
    if (mesh.dim() != 2) {
        throw std::invalid_argument("SymmetricDirichletEnergy: mesh must be 2D");
    }
    if (mesh.triangles.empty()) {
        throw std::invalid_argument("SymmetricDirichletEnergy: mesh has no triangles");
    }
    const ParamMatrix& rest = mesh.rest();
    tris_.reserve(mesh.triangles.size());
    for (size_t k = 0; k < mesh.triangles.size(); ++k) {
        const auto& t = mesh.triangles[k];
        Eigen::Matrix2d rest_edges;
        rest_edges.col(0) = (rest.row(t[1]) - rest.row(t[0])).transpose();
        rest_edges.col(1) = (rest.row(t[2]) - rest.row(t[0])).transpose();
        const double det = rest_edges.determinant();
        if (!(det > 1e-14)) {
            throw std::invalid_argument(
                "SymmetricDirichletEnergy: rest triangle " + std::to_string(k) +
                " has non-positive area");
        }
        tris_.push_back({t, rest_edges.inverse(), 0.5 * det});
    }
}

// Shared triangle sweep. `accum(k, tri, J, dphi_dJ_needed)` receives the
// per-triangle Jacobian; gradient assembly happens in the caller's lambda.
template <typename Accum>
double SymmetricDirichletEnergy::accumulate(const ParamMatrix& p,
                                            Accum&& accum) const {
    check_shape(p);
    double total = 0.0;
    for (size_t k = 0; k < tris_.size(); ++k) {
        const TriData& tri = tris_[k];
        Eigen::Matrix2d deformed_edges;
        deformed_edges.col(0) = (p.row(tri.idx[1]) - p.row(tri.idx[0])).transpose();
        deformed_edges.col(1) = (p.row(tri.idx[2]) - p.row(tri.idx[0])).transpose();
        const Eigen::Matrix2d J = deformed_edges * tri.inv_rest;
        const double det = J.determinant();
        if (!(det > kMinAreaRatio)) {
            throw numeric_error(
                "symmetric Dirichlet: deformed triangle " + std::to_string(k) +
                " is degenerate or inverted (det J = " + std::to_string(det) + ")");
        }
        // For 2x2, |J^-1|_F^2 = |J|_F^2 / det^2.
        const double frob = J.squaredNorm();
        total += tri.area * frob * (1.0 + 1.0 / (det * det));
        accum(tri, J, frob, det);
    }
    return total;
}

double SymmetricDirichletEnergy::value(const ParamMatrix& p) const {
    return accumulate(p, [](const TriData&, const Eigen::Matrix2d&, double,
                            double) {});
}

ParamMatrix SymmetricDirichletEnergy::gradient(const ParamMatrix& p) const {
    ParamMatrix grad = ParamMatrix::Zero(rows_, 2);
    accumulate(p, [&grad](const TriData& tri, const Eigen::Matrix2d& J,
                          double frob, double det) {
        // d/dJ [ |J|^2 (1 + det^-2) ] = 2J(1 + det^-2) - 2|J|^2 det^-3 adj(J)^T
        Eigen::Matrix2d ddet; // d(det J)/dJ
        ddet << J(1, 1), -J(1, 0), -J(0, 1), J(0, 0);
        const double inv_det2 = 1.0 / (det * det);
        const Eigen::Matrix2d dphi_dJ =
            2.0 * (1.0 + inv_det2) * J - 2.0 * frob * inv_det2 / det * ddet;
        // Chain rule through J = D * inv_rest: dE/dD = dE/dJ * inv_rest^T.
        const Eigen::Matrix2d dE_dD =
            tri.area * dphi_dJ * tri.inv_rest.transpose();
        grad.row(tri.idx[1]) += dE_dD.col(0).transpose();
        grad.row(tri.idx[2]) += dE_dD.col(1).transpose();
        grad.row(tri.idx[0]) -= (dE_dD.col(0) + dE_dD.col(1)).transpose();
    });
    return grad;
}

} // namespace vadam
