#include "vadam/tensor.hpp"

#include "vadam/rng.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>

namespace vadam {

namespace {
constexpr double kRotationTol = 1e-12;
} // namespace

Eigen::VectorXd row_norms(const ParamMatrix& p) {
    return p.rowwise().norm();
}

Rotation::Rotation(Eigen::MatrixXd mat) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw std::invalid_argument("Rotation: matrix must be square and non-empty");
    }
    const Eigen::Index n = mat_.rows();
    const Eigen::MatrixXd residual =
        mat_ * mat_.transpose() - Eigen::MatrixXd::Identity(n, n);
    if (residual.cwiseAbs().maxCoeff() > kRotationTol) {
        throw std::invalid_argument("Rotation: matrix is not orthogonal");
    }
    if (std::abs(mat_.determinant() - 1.0) > kRotationTol) {
        throw std::invalid_argument("Rotation: determinant is not +1");
    }
}

Rotation Rotation::identity(Eigen::Index n) {
    return Rotation(Eigen::MatrixXd::Identity(n, n));
}

Rotation Rotation::from_angle(double radians) {
    const double c = std::cos(radians), s = std::sin(radians);
    Eigen::Matrix2d m;
    m << c, -s, s, c;
    return Rotation(m);
}

Rotation Rotation::from_axis_angle(const Eigen::Vector3d& axis, double radians) {
    const double len = axis.norm();
    if (len == 0.0) {
        throw std::invalid_argument("Rotation: axis must be nonzero");
    }
    const Eigen::Vector3d u = axis / len;
    const double c = std::cos(radians), s = std::sin(radians);
    Eigen::Matrix3d k;
    k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity() + s * k + (1.0 - c) * k * k;
    return Rotation(m);
}

Rotation Rotation::inverse() const {
    return Rotation(mat_.transpose());
}

Rotation random_rotation(Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    if (n == 2) {
        return Rotation::from_angle(rng.uniform(0.0, 2.0 * M_PI));
    }
    if (n == 3) {
        // Shoemake's subgroup method: uniform unit quaternion from three
        // uniforms, then the standard quaternion-to-matrix map.
        const double u1 = rng.uniform();
        const double u2 = rng.uniform(0.0, 2.0 * M_PI);
        const double u3 = rng.uniform(0.0, 2.0 * M_PI);
        const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        const double x = a * std::sin(u2);
        const double y = a * std::cos(u2);
        const double z = b * std::sin(u3);
        const double w = b * std::cos(u3);
        Eigen::Matrix3d m;
        m << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
             2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
             2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
        return Rotation(m);
    }
    throw std::invalid_argument("random_rotation: no sampler for n=" +
                                std::to_string(n) + " (supported: 2, 3)");
}

ParamMatrix apply_rotation(const Rotation& r, const ParamMatrix& p) {
    if (r.dim() != p.cols()) {
        throw std::invalid_argument(
            "apply_rotation: rotation dimension " + std::to_string(r.dim()) +
            " does not match vector dimension " + std::to_string(p.cols()));
    }
    // (R v)^T = v^T R^T applied to every row at once.
    return p * r.matrix().transpose();
}

} // namespace vadam
