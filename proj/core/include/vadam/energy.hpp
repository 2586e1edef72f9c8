#pragma once

#include "vadam/mesh.hpp"
#include "vadam/tensor.hpp"

#include <Eigen/SparseCore>

#include <memory>
#include <string_view>
#include <vector>

namespace vadam {

/// A differentiable objective over a fixed-shape ParamMatrix. Values and
/// gradients are pure functions of p; instances are immutable after
/// construction and safe to evaluate from multiple threads.
class Energy {
public:
    virtual ~Energy() = default;

    virtual double value(const ParamMatrix& p) const = 0;
    virtual ParamMatrix gradient(const ParamMatrix& p) const = 0;

    virtual Eigen::Index rows() const = 0;
    virtual Eigen::Index cols() const = 0;

protected:
    void check_shape(const ParamMatrix& p) const;
};

/// 0.5 * |p - target|_F^2. Gradient is p - target. Smoke-test energy.
class QuadraticEnergy : public Energy {
public:
    explicit QuadraticEnergy(ParamMatrix target);

    double value(const ParamMatrix& p) const override;
    ParamMatrix gradient(const ParamMatrix& p) const override;
    Eigen::Index rows() const override { return target_.rows(); }
    Eigen::Index cols() const override { return target_.cols(); }

private:
    ParamMatrix target_;
};

/// Uniform umbrella Laplacian regularizer:
///   E(p) = sum_i | p_i - mean_{j in N(i)} p_j |^2 = |M p|_F^2
/// with M = I - D^-1 A assembled once from the mesh adjacency. Intrinsic:
/// invariant to rotation and translation of p. Vertices must have degree
/// >= 1 (checked at construction).
class LaplacianEnergy : public Energy {
public:
    explicit LaplacianEnergy(const TriMesh& mesh);

    double value(const ParamMatrix& p) const override;
    ParamMatrix gradient(const ParamMatrix& p) const override;
    Eigen::Index rows() const override { return rows_; }
    Eigen::Index cols() const override { return cols_; }

private:
    Eigen::SparseMatrix<double> umbrella_; // I - D^-1 A
    Eigen::Index rows_, cols_;
};

/// Area-weighted symmetric Dirichlet distortion of a 2D triangle mesh
/// against its rest shape:
///   E(p) = sum_t A_t * (|J_t|_F^2 + |J_t^-1|_F^2),
/// J_t the rest-to-deformed Jacobian from precomputed inverse rest-edge
/// matrices. A deformed triangle with signed area below 1e-12 of its rest
/// area (degenerate or inverted) raises numeric_error naming the triangle.
class SymmetricDirichletEnergy : public Energy {
public:
    explicit SymmetricDirichletEnergy(const TriMesh& mesh);

    double value(const ParamMatrix& p) const override;
    ParamMatrix gradient(const ParamMatrix& p) const override;
    Eigen::Index rows() const override { return rows_; }
    Eigen::Index cols() const override { return 2; }

private:
    struct TriData {
        std::array<int, 3> idx;
        Eigen::Matrix2d inv_rest; // inverse rest edge matrix
        double area;              // rest area
    };
    template <typename Accum>
    double accumulate(const ParamMatrix& p, Accum&& accum) const;

    std::vector<TriData> tris_;
    Eigen::Index rows_;
};

/// As-rigid-as-possible energy with uniform edge weights and per-vertex
/// best-fit rotations (spokes form):
///   E(p) = sum_i sum_{j in N(i)} |(p_i - p_j) - R_i (phat_i - phat_j)|^2,
/// each R_i the SO(2) maximizer of tr(R S_i) for the local covariance
/// S_i = sum_j ehat_ij e_ij^T, found in closed form. The gradient holds
/// every R_i fixed at its minimizer, which is exact since the R_i are
/// themselves minimizers over SO(2). A fully degenerate covariance falls
/// back to the identity rotation; never an error.
class ArapEnergy : public Energy {
public:
    explicit ArapEnergy(const TriMesh& mesh);

    double value(const ParamMatrix& p) const override;
    ParamMatrix gradient(const ParamMatrix& p) const override;
    Eigen::Index rows() const override { return rows_; }
    Eigen::Index cols() const override { return 2; }

    /// Best-fit rotation per vertex at configuration p (exposed for tests).
    std::vector<Eigen::Matrix2d> fit_rotations(const ParamMatrix& p) const;

private:
    ParamMatrix rest_;
    std::vector<std::vector<int>> neighbors_;
    Eigen::Index rows_;
};

/// Builds "laplacian" | "symdir" | "arap" | "quad" from a mesh. The
/// quadratic target is the origin, so minimizing it shrinks the mesh to a
/// point. Unknown ids throw std::invalid_argument.
std::unique_ptr<Energy> make_energy(std::string_view id, const TriMesh& mesh);

} // namespace vadam
