#include "vadam/energy.hpp"

#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>
#include <vector>

namespace vadam {

void Energy::check_shape(const ParamMatrix& p) const {
    if (p.rows() != rows() || p.cols() != cols()) {
        throw std::invalid_argument(
            "energy: expected " + std::to_string(rows()) + "x" +
            std::to_string(cols()) + " parameters, got " +
            std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
    }
}

QuadraticEnergy::QuadraticEnergy(ParamMatrix target) : target_(std::move(target)) {}

double QuadraticEnergy::value(const ParamMatrix& p) const {
    check_shape(p);
    return 0.5 * (p - target_).squaredNorm();
}

ParamMatrix QuadraticEnergy::gradient(const ParamMatrix& p) const {
    check_shape(p);
    return p - target_;
}

LaplacianEnergy::LaplacianEnergy(const TriMesh& mesh)
    : rows_(mesh.vertex_count()), cols_(mesh.dim()) {
    mesh.validate();
    const auto nbrs = mesh.adjacency();
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < static_cast<int>(nbrs.size()); ++i) {
        if (nbrs[static_cast<size_t>(i)].empty()) {
            throw std::invalid_argument(
                "LaplacianEnergy: vertex " + std::to_string(i) +
                " is isolated (degree 0)");
        }
        const double inv_deg = 1.0 / static_cast<double>(nbrs[static_cast<size_t>(i)].size());
        triplets.emplace_back(i, i, 1.0);
        for (int j : nbrs[static_cast<size_t>(i)]) {
            triplets.emplace_back(i, j, -inv_deg);
        }
    }
    umbrella_.resize(rows_, rows_);
    umbrella_.setFromTriplets(triplets.begin(), triplets.end());
    umbrella_.makeCompressed();
}

double LaplacianEnergy::value(const ParamMatrix& p) const {
    check_shape(p);
    return (umbrella_ * p).squaredNorm();
}

ParamMatrix LaplacianEnergy::gradient(const ParamMatrix& p) const {
    check_shape(p);
    return 2.0 * (umbrella_.transpose() * (umbrella_ * p).eval());
}

std::unique_ptr<Energy> make_energy(std::string_view id, const TriMesh& mesh) {
    if (id == "quad") {
        return std::make_unique<QuadraticEnergy>(
            ParamMatrix::Zero(mesh.vertex_count(), mesh.dim()));
    }
    if (id == "laplacian") return std::make_unique<LaplacianEnergy>(mesh);
    if (id == "symdir") return std::make_unique<SymmetricDirichletEnergy>(mesh);
    if (id == "arap") return std::make_unique<ArapEnergy>(mesh);
    throw std::invalid_argument("unknown energy '" + std::string(id) +
                                "' (expected laplacian | symdir | arap | quad)");
}

} // namespace vadam
