#include "vadam/tensor.hpp"

#include "oracles.hpp"

#include <Eigen/LU>
#include <doctest.h>

#include <cmath>
#include <vector>

using namespace vadam;

TEST_SUITE("tensor") {

TEST_CASE("row_norms matches hand values") {
    ParamMatrix p(3, 3);
    p << 3, 4, 0,
         0, 0, 0,
         1, 1, 1;
    const Eigen::VectorXd norms = row_norms(p);
    CHECK(norms(0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(norms(1) == 0.0);
    CHECK(norms(2) ==
          doctest::Approx(oracle::norm_by_summation({1, 1, 1})).epsilon(1e-15));
}

TEST_CASE("random_rotation n=2 has the parametric form") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Rotation r = random_rotation(2, seed);
        const Eigen::MatrixXd& m = r.matrix();
        const double phi = std::atan2(m(1, 0), m(0, 0));
        Eigen::Matrix2d rebuilt;
        rebuilt << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
        CHECK((m - rebuilt).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd residual =
            m * m.transpose() - Eigen::MatrixXd::Identity(2, 2);
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("random_rotation n=3 satisfies the SO(3) invariants") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Rotation r = random_rotation(3, seed);
        const Eigen::MatrixXd& m = r.matrix();
        const Eigen::MatrixXd residual =
            m * m.transpose() - Eigen::MatrixXd::Identity(3, 3);
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("random_rotation rejects unsupported dimensions") {
    CHECK_THROWS_AS(random_rotation(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_rotation(1, 1), std::invalid_argument);
}

TEST_CASE("n=2 rotation angles are uniform on [0, 2pi)") {
    const int n = 100000;
    std::vector<double> angles;
    angles.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Rotation r = random_rotation(2, static_cast<std::uint64_t>(i + 1));
        const Eigen::MatrixXd& m = r.matrix();
        double phi = std::atan2(m(1, 0), m(0, 0));
        if (phi < 0.0) phi += 2.0 * M_PI;
        angles.push_back(phi);
    }
    CHECK(oracle::ks_statistic_uniform(std::move(angles), 0.0, 2.0 * M_PI) <
          0.01);
}

TEST_CASE("apply_rotation basics") {
    ParamMatrix p(2, 2);
    p << 1, 0,
         0.5, -2;

    SUBCASE("identity is a no-op") {
        const ParamMatrix q = apply_rotation(Rotation::identity(2), p);
        CHECK((q - p).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("quarter turn maps e_x to e_y") {
        const ParamMatrix q = apply_rotation(Rotation::from_angle(M_PI / 2), p);
        CHECK(q(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(q(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(apply_rotation(Rotation::identity(3), p),
                        std::invalid_argument);
    }
}

TEST_CASE("apply_rotation preserves row norms and inverts cleanly") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Rotation r = random_rotation(seed % 2 ? 2 : 3, seed);
        ParamMatrix p(4, r.dim());
        // Deterministic but irregular entries.
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            for (Eigen::Index j = 0; j < p.cols(); ++j) {
                p(i, j) = std::sin(static_cast<double>(seed) * 3.7 +
                                   static_cast<double>(i * p.cols() + j) * 1.3);
            }
        }
        const ParamMatrix q = apply_rotation(r, p);
        const Eigen::VectorXd before = row_norms(p);
        const Eigen::VectorXd after = row_norms(q);
        for (Eigen::Index i = 0; i < before.size(); ++i) {
            CHECK(std::abs(after(i) - before(i)) <= 1e-12 * (1.0 + before(i)));
        }
        const ParamMatrix back = apply_rotation(r.inverse(), q);
        CHECK((back - p).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Rotation validates its invariants") {
    Eigen::Matrix2d skewed;
    skewed << 1.0, 0.1, 0.0, 1.0;
    CHECK_THROWS_AS(Rotation{skewed}, std::invalid_argument);

    Eigen::Matrix2d reflection;
    reflection << 1.0, 0.0, 0.0, -1.0; // orthogonal but det = -1
    CHECK_THROWS_AS(Rotation{reflection}, std::invalid_argument);
}

} // TEST_SUITE
