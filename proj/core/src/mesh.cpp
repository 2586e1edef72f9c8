#include "vadam/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace vadam {

void TriMesh::validate() const {
    const int m = static_cast<int>(vertices.rows());
    const Eigen::Index n = vertices.cols();
    if (m < 1 || (n != 2 && n != 3)) {
        throw std::invalid_argument("TriMesh: vertices must be m x 2 or m x 3");
    }
    if (!vertices.allFinite()) {
        throw std::invalid_argument("TriMesh: non-finite vertex coordinates");
    }
    for (const auto& t : triangles) {
        for (int idx : t) {
            if (idx < 0 || idx >= m) {
                throw std::invalid_argument("TriMesh: triangle index out of range");
            }
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw std::invalid_argument("TriMesh: repeated vertex within a triangle");
        }
    }
    for (const auto& e : edges) {
        if (e[0] < 0 || e[0] >= m || e[1] < 0 || e[1] >= m) {
            throw std::invalid_argument("TriMesh: edge index out of range");
        }
        if (e[0] == e[1]) {
            throw std::invalid_argument("TriMesh: degenerate edge");
        }
    }
    if (rest_vertices &&
        (rest_vertices->rows() != vertices.rows() || rest_vertices->cols() != n)) {
        throw std::invalid_argument("TriMesh: rest_vertices shape mismatch");
    }
}

std::vector<std::array<int, 2>> TriMesh::edge_list() const {
    std::set<std::array<int, 2>> unique;
    auto add = [&unique](int a, int b) {
        unique.insert({std::min(a, b), std::max(a, b)});
    };
    for (const auto& t : triangles) {
        add(t[0], t[1]);
        add(t[1], t[2]);
        add(t[2], t[0]);
    }
    for (const auto& e : edges) {
        add(e[0], e[1]);
    }
    return {unique.begin(), unique.end()};
}

std::vector<std::vector<int>> TriMesh::adjacency() const {
    std::vector<std::vector<int>> nbrs(vertices.rows());
    for (const auto& e : edge_list()) {
        nbrs[e[0]].push_back(e[1]);
        nbrs[e[1]].push_back(e[0]);
    }
    for (auto& list : nbrs) {
        std::sort(list.begin(), list.end());
    }
    return nbrs;
}

TriMesh make_circle(int k) {
    if (k < 3) {
        throw std::invalid_argument("make_circle: need at least 3 vertices, got " +
                                    std::to_string(k));
    }
    TriMesh mesh;
    mesh.vertices.resize(k, 2);
    for (int i = 0; i < k; ++i) {
        const double phi = 2.0 * M_PI * i / k;
        mesh.vertices(i, 0) = std::cos(phi);
        mesh.vertices(i, 1) = std::sin(phi);
    }
    mesh.edges.reserve(k);
    for (int i = 0; i < k; ++i) {
        mesh.edges.push_back({i, (i + 1) % k});
    }
    mesh.rest_vertices = mesh.vertices;
    mesh.validate();
    return mesh;
}

TriMesh make_icosphere(int subdivisions) {
    if (subdivisions < 0 || subdivisions > 5) {
        throw std::invalid_argument("make_icosphere: subdivisions must be in [0, 5]");
    }
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) {
        v.normalize();
    }
    // Outward-oriented icosahedron faces.
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Eigen::Vector3d v = (verts[a] + verts[b]).normalized();
            verts.push_back(v);
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = mid(f[0], f[1]);
            const int bc = mid(f[1], f[2]);
            const int ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    TriMesh mesh;
    mesh.vertices.resize(static_cast<Eigen::Index>(verts.size()), 3);
    for (Eigen::Index i = 0; i < mesh.vertices.rows(); ++i) {
        mesh.vertices.row(i) = verts[static_cast<size_t>(i)].transpose();
    }
    mesh.triangles = std::move(faces);
    mesh.rest_vertices = mesh.vertices;
    mesh.validate();
    return mesh;
}

TriMesh make_disk(int rings) {
    if (rings < 1) {
        throw std::invalid_argument("make_disk: rings must be >= 1");
    }
    // Triangular lattice clipped to a hexagon of radius `rings`, scaled to
    // unit circumradius. Axial coordinates (q, r) with |q|, |r|, |q+r| <= R.
    const int R = rings;
    std::map<std::pair<int, int>, int> index;
    std::vector<Eigen::Vector2d> pts;
    for (int r = -R; r <= R; ++r) {
        for (int q = -R; q <= R; ++q) {
            if (std::abs(q + r) > R) continue;
            index[{q, r}] = static_cast<int>(pts.size());
            pts.emplace_back((q + 0.5 * r) / R, (std::sqrt(3.0) / 2.0) * r / R);
        }
    }
    TriMesh mesh;
    mesh.vertices.resize(static_cast<Eigen::Index>(pts.size()), 2);
    for (Eigen::Index i = 0; i < mesh.vertices.rows(); ++i) {
        mesh.vertices.row(i) = pts[static_cast<size_t>(i)].transpose();
    }
    auto at = [&index](int q, int r) {
        auto it = index.find({q, r});
        return it == index.end() ? -1 : it->second;
    };
    for (int r = -R; r <= R; ++r) {
        for (int q = -R; q <= R; ++q) {
            // Upward triangle (q,r) (q+1,r) (q,r+1), downward (q+1,r) (q+1,r+1) (q,r+1).
            const int a = at(q, r), b = at(q + 1, r), c = at(q, r + 1), d = at(q + 1, r + 1);
            if (a >= 0 && b >= 0 && c >= 0) mesh.triangles.push_back({a, b, c});
            if (b >= 0 && d >= 0 && c >= 0) mesh.triangles.push_back({b, d, c});
        }
    }
    mesh.rest_vertices = mesh.vertices;
    mesh.validate();
    return mesh;
}

TriMesh make_mesh(std::string_view source, bool flatten_z) {
    const auto colon = source.find(':');
    if (colon != std::string_view::npos) {
        const std::string kind(source.substr(0, colon));
        const std::string arg(source.substr(colon + 1));
        int value = 0;
        try {
            size_t pos = 0;
            value = std::stoi(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw std::invalid_argument("make_mesh: bad generator argument '" +
                                        std::string(source) + "'");
        }
        if (kind == "circle") return make_circle(value);
        if (kind == "icosphere") return make_icosphere(value);
        if (kind == "disk") return make_disk(value);
        throw std::invalid_argument("make_mesh: unknown generator '" + kind + "'");
    }
    return load_obj(std::string(source), flatten_z);
}

} // namespace vadam
