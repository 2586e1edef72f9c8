#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace vadam {

/// Parameter block: m row vectors of dimension n, one vector parameter per
/// row. Row-major so the per-vector optimizer loops touch contiguous memory.
/// Also used for gradient matrices, which share the same shape.
using ParamMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Euclidean norm of every row of `p`.
Eigen::VectorXd row_norms(const ParamMatrix& p);

/// An element of SO(n): orthogonal with determinant +1.
/// Construction validates both properties to 1e-12 per entry.
class Rotation {
public:
    explicit Rotation(Eigen::MatrixXd mat);

    static Rotation identity(Eigen::Index n);

    /// 2D rotation by `radians` counter-clockwise.
    static Rotation from_angle(double radians);

    /// 3D rotation by `radians` about `axis` (need not be normalized).
    static Rotation from_axis_angle(const Eigen::Vector3d& axis, double radians);

    const Eigen::MatrixXd& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    /// The inverse rotation (transpose).
    Rotation inverse() const;

private:
    Eigen::MatrixXd mat_;
};

/// Haar-uniform random rotation. Samplers exist for n=2 (uniform angle) and
/// n=3 (uniform unit quaternion); other n throw std::invalid_argument.
Rotation random_rotation(Eigen::Index n, std::uint64_t seed);

/// Rotate every row of `p`: row i of the result is r * row i of `p`.
/// Throws std::invalid_argument on dimension mismatch.
ParamMatrix apply_rotation(const Rotation& r, const ParamMatrix& p);

} // namespace vadam
