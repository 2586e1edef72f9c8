#include "vadam/energy.hpp"

#include "vadam/errors.hpp"
#include "vadam/mesh.hpp"
#include "vadam/optim.hpp"
#include "vadam/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

using namespace vadam;

namespace {

ParamMatrix perturbed(const ParamMatrix& base, std::uint64_t seed,
                      double scale = 0.02) {
    Rng rng(seed);
    ParamMatrix p = base;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            p(i, j) += rng.uniform(-scale, scale);
        }
    }
    return p;
}

// Max per-entry relative deviation between the analytic gradient and the
// test-local central-difference oracle.
double fd_gradient_error(const Energy& energy, const ParamMatrix& p, double h) {
    auto flat_value = [&energy, &p](const std::vector<double>& x) {
        ParamMatrix q(p.rows(), p.cols());
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            for (Eigen::Index j = 0; j < p.cols(); ++j) {
                q(i, j) = x[static_cast<size_t>(i * p.cols() + j)];
            }
        }
        return energy.value(q);
    };
    std::vector<double> x(static_cast<size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            x[static_cast<size_t>(i * p.cols() + j)] = p(i, j);
        }
    }
    const std::vector<double> fd = oracle::central_difference(flat_value, x, h);
    const ParamMatrix analytic = energy.gradient(p);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            const double ref = fd[static_cast<size_t>(i * p.cols() + j)];
            const double denom =
                std::max({1.0, std::abs(ref), std::abs(analytic(i, j))});
            worst = std::max(worst, std::abs(analytic(i, j) - ref) / denom);
        }
    }
    return worst;
}

void check_rotation_invariance(const Energy& energy, const ParamMatrix& p,
                               int rotations) {
    const double base = energy.value(p);
    const ParamMatrix base_grad = energy.gradient(p);
    for (int k = 0; k < rotations; ++k) {
        const Rotation r =
            random_rotation(p.cols(), static_cast<std::uint64_t>(k + 1));
        const ParamMatrix rotated = apply_rotation(r, p);
        CHECK(std::abs(energy.value(rotated) - base) <=
              1e-10 * (1.0 + std::abs(base)));
        const ParamMatrix g = energy.gradient(rotated);
        const ParamMatrix expected = apply_rotation(r, base_grad);
        const double scale = expected.cwiseAbs().maxCoeff();
        CHECK((g - expected).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + scale));
    }
}

} // namespace

TEST_SUITE("energy") {

TEST_CASE("quadratic energy basics") {
    ParamMatrix target(2, 2);
    target << 1, 2, 3, 4;
    const QuadraticEnergy energy{target};
    CHECK(energy.value(target) == 0.0);
    CHECK(energy.gradient(target).cwiseAbs().maxCoeff() == 0.0);

    ParamMatrix p(2, 2);
    p << 0, 2, 3, 6;
    CHECK(energy.value(p) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK((energy.gradient(p) - (p - target)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gd with alpha=1 solves the quadratic in one step") {
    ParamMatrix target(3, 2);
    target << 1, 0, -1, 2, 0.5, 0.5;
    const QuadraticEnergy energy{target};
    ParamMatrix p(3, 2);
    p << 5, 5, 5, 5, 5, 5;
    const ParamMatrix q = gd_step(p, energy.gradient(p), 1.0);
    CHECK((q - target).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adam and vectoradam make progress on the quadratic") {
    ParamMatrix target = ParamMatrix::Zero(4, 2);
    const QuadraticEnergy energy{target};
    ParamMatrix p0(4, 2);
    p0 << 1, 1, -1, 0.5, 0.3, -0.7, 2, -2;
    for (const auto kind : {OptimizerKind::Adam, OptimizerKind::VectorAdam}) {
        const Trajectory traj = run(kind, Hyper{}, energy, p0, 200);
        CHECK(traj.losses.back() < traj.losses.front());
    }
}

TEST_CASE("laplacian value is zero for coincident vertices") {
    const TriMesh circle = make_circle(8);
    const LaplacianEnergy energy(circle);
    const ParamMatrix coincident = ParamMatrix::Ones(8, 2);
    CHECK(energy.value(coincident) == 0.0);
    CHECK(energy.gradient(coincident).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian on the regular polygon matches the closed form") {
    const int k = 64;
    const TriMesh circle = make_circle(k);
    const LaplacianEnergy energy(circle);
    // Every umbrella vector is (1 - cos(2pi/k)) times the vertex position.
    const double per_vertex = 1.0 - std::cos(2.0 * M_PI / k);
    const double closed_form = k * per_vertex * per_vertex;
    CHECK(energy.value(circle.vertices) ==
          doctest::Approx(closed_form).epsilon(1e-12));

    // And against the direct-summation oracle.
    std::vector<std::vector<double>> verts(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        verts[static_cast<size_t>(i)] = {circle.vertices(i, 0),
                                         circle.vertices(i, 1)};
    }
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        nbrs[static_cast<size_t>(i)] = {(i + k - 1) % k, (i + 1) % k};
    }
    CHECK(energy.value(circle.vertices) ==
          doctest::Approx(oracle::laplacian_by_summation(verts, nbrs))
              .epsilon(1e-12));
}

TEST_CASE("laplacian is rotation and translation invariant") {
    const TriMesh circle = make_circle(24);
    const LaplacianEnergy energy(circle);
    const ParamMatrix p = perturbed(circle.vertices, 5, 0.1);
    check_rotation_invariance(energy, p, 100);

    ParamMatrix translated = p;
    translated.col(0).array() += 3.25;
    translated.col(1).array() -= 1.5;
    CHECK(std::abs(energy.value(translated) - energy.value(p)) <=
          1e-10 * (1.0 + energy.value(p)));
}

TEST_CASE("laplacian works on triangle meshes in 3D") {
    const TriMesh sphere = make_icosphere(1);
    const LaplacianEnergy energy(sphere);
    const ParamMatrix p = perturbed(sphere.vertices, 9, 0.05);
    check_rotation_invariance(energy, p, 20);
    CHECK(fd_gradient_error(energy, p, 1e-6) < 1e-5);
}

TEST_CASE("laplacian rejects isolated vertices") {
    TriMesh mesh;
    mesh.vertices = ParamMatrix::Zero(4, 2);
    mesh.vertices << 0, 0, 1, 0, 0, 1, 5, 5;
    mesh.triangles.push_back({0, 1, 2}); // vertex 3 isolated
    CHECK_THROWS_AS(LaplacianEnergy{mesh}, std::invalid_argument);
}

TEST_CASE("laplacian gradient matches finite differences") {
    const TriMesh circle = make_circle(16);
    const LaplacianEnergy energy(circle);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CHECK(fd_gradient_error(energy, perturbed(circle.vertices, seed, 0.1),
                                1e-6) < 1e-5);
    }
}

TEST_CASE("symmetric dirichlet at the rest state") {
    const TriMesh disk = make_disk(3);
    const SymmetricDirichletEnergy energy(disk);
    // J = I per triangle: |I|^2 + |I^-1|^2 = 4, so E = 4 * total rest area.
    double total_area = 0.0;
    for (const auto& t : disk.triangles) {
        const Eigen::Vector2d a = disk.vertices.row(t[0]);
        const Eigen::Vector2d b = disk.vertices.row(t[1]);
        const Eigen::Vector2d c = disk.vertices.row(t[2]);
        total_area += 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                             (b.y() - a.y()) * (c.x() - a.x()));
    }
    CHECK(energy.value(disk.vertices) ==
          doctest::Approx(4.0 * total_area).epsilon(1e-12));

    // A rigid rotation leaves the energy at the identity value.
    const Rotation r = Rotation::from_angle(0.7);
    CHECK(std::abs(energy.value(apply_rotation(r, disk.vertices)) -
                   4.0 * total_area) <= 1e-10 * (1.0 + 4.0 * total_area));
}

TEST_CASE("symmetric dirichlet gradient matches finite differences") {
    // Two-triangle square, as small as it gets.
    TriMesh square;
    square.vertices = ParamMatrix(4, 2);
    square.vertices << 0, 0, 1, 0, 1, 1, 0, 1;
    square.triangles = {{0, 1, 2}, {0, 2, 3}};
    square.rest_vertices = square.vertices;
    const SymmetricDirichletEnergy energy(square);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CHECK(fd_gradient_error(energy, perturbed(square.vertices, seed), 1e-6) <
              1e-5);
    }

    const TriMesh disk = make_disk(4);
    const SymmetricDirichletEnergy disk_energy(disk);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CHECK(fd_gradient_error(disk_energy, perturbed(disk.vertices, seed),
                                1e-6) < 1e-5);
    }
}

TEST_CASE("symmetric dirichlet is rotation invariant away from rest") {
    const TriMesh disk = make_disk(3);
    const SymmetricDirichletEnergy energy(disk);
    check_rotation_invariance(energy, perturbed(disk.vertices, 3), 100);
}

TEST_CASE("symmetric dirichlet rejects inverted triangles by index") {
    TriMesh square;
    square.vertices = ParamMatrix(4, 2);
    square.vertices << 0, 0, 1, 0, 1, 1, 0, 1;
    square.triangles = {{0, 1, 2}, {0, 2, 3}};
    square.rest_vertices = square.vertices;
    const SymmetricDirichletEnergy energy(square);

    ParamMatrix flipped = square.vertices;
    flipped(3, 0) = 2.5; // pushes vertex 3 across the 0-2 diagonal
    try {
        energy.value(flipped);
        FAIL("expected numeric_error");
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("triangle 1") != std::string::npos);
    }

    // Degenerate (zero-area) configuration: all vertices on a line.
    ParamMatrix collapsed = square.vertices;
    collapsed.col(1).setZero();
    CHECK_THROWS_AS(energy.value(collapsed), numeric_error);
}

TEST_CASE("symmetric dirichlet requires positive rest areas") {
    TriMesh bad;
    bad.vertices = ParamMatrix(3, 2);
    bad.vertices << 0, 0, 1, 0, 2, 0; // collinear rest triangle
    bad.triangles = {{0, 1, 2}};
    bad.rest_vertices = bad.vertices;
    CHECK_THROWS_AS(SymmetricDirichletEnergy{bad}, std::invalid_argument);
}

TEST_CASE("arap vanishes on rigid motions of the rest mesh") {
    const TriMesh disk = make_disk(3);
    const ArapEnergy energy(disk);
    CHECK(energy.value(disk.vertices) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(energy.gradient(disk.vertices).cwiseAbs().maxCoeff() < 1e-12);

    const Rotation r = Rotation::from_angle(1.1);
    const ParamMatrix rotated = apply_rotation(r, disk.vertices);
    CHECK(energy.value(rotated) <= 1e-10);
    CHECK(energy.gradient(rotated).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("arap gradient matches finite differences on the 200-vertex disk") {
    const TriMesh disk = make_disk(8);
    REQUIRE(disk.vertex_count() == 217);
    const ArapEnergy energy(disk);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        CHECK(fd_gradient_error(energy, perturbed(disk.vertices, seed), 1e-6) <
              1e-4);
    }
}

TEST_CASE("arap is rotation invariant") {
    const TriMesh disk = make_disk(3);
    const ArapEnergy energy(disk);
    check_rotation_invariance(energy, perturbed(disk.vertices, 17), 100);
}

TEST_CASE("arap best-fit rotations recover a global rotation") {
    const TriMesh disk = make_disk(2);
    const ArapEnergy energy(disk);
    const Rotation r = Rotation::from_angle(0.9);
    const auto rotations = energy.fit_rotations(apply_rotation(r, disk.vertices));
    for (const auto& fitted : rotations) {
        CHECK((fitted - r.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("energy registry resolves ids") {
    const TriMesh disk = make_disk(2);
    for (const char* id : {"laplacian", "symdir", "arap", "quad"}) {
        const auto energy = make_energy(id, disk);
        CHECK(energy->rows() == disk.vertex_count());
        CHECK(energy->cols() == 2);
    }
    CHECK_THROWS_AS(make_energy("dirichlet", disk), std::invalid_argument);
}

TEST_CASE("energies reject wrong parameter shapes") {
    const TriMesh disk = make_disk(2);
    const auto energy = make_energy("laplacian", disk);
    CHECK_THROWS_AS(energy->value(ParamMatrix::Zero(3, 2)),
                    std::invalid_argument);
}

} // TEST_SUITE
