#pragma once

#include "vadam/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vadam {

/// Triangle mesh (or edge polyline for 2D curves like the circle).
///
/// `vertices` is m x n with n in {2, 3}. Connectivity is either `triangles`
/// (disk, icosphere, loaded OBJ) or explicit `edges` (circle polyline).
/// `rest_vertices` carries the undeformed configuration for deformation
/// energies; generators set it equal to `vertices`.
struct TriMesh {
    ParamMatrix vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> edges;
    std::optional<ParamMatrix> rest_vertices;

    Eigen::Index vertex_count() const { return vertices.rows(); }
    Eigen::Index dim() const { return vertices.cols(); }

    const ParamMatrix& rest() const {
        return rest_vertices ? *rest_vertices : vertices;
    }

    /// All indices in range, no degenerate triangles/edges (repeated vertex).
    /// Throws std::invalid_argument on violation.
    void validate() const;

    /// Undirected edge list: triangle edges and explicit edges, deduplicated,
    /// each stored with a < b and sorted lexicographically.
    std::vector<std::array<int, 2>> edge_list() const;

    /// Per-vertex sorted neighbor lists derived from edge_list(). Symmetric
    /// by construction.
    std::vector<std::vector<int>> adjacency() const;
};

/// Reads a triangulated OBJ (v/f records; vn, vt, comments and other records
/// are ignored; `f` entries may use the v/vt/vn slash syntax). Indices are
/// 1-based in the file, 0-based in the result. Non-triangle faces and
/// out-of-range indices throw std::invalid_argument with the line number.
///
/// With `flatten_z`, a file whose vertices all satisfy |z| < 1e-9 is
/// returned as a 2D mesh; flattening a file with nonzero z is an error.
TriMesh load_obj(const std::string& path, bool flatten_z = false);

/// Writes vertices and triangles as ASCII OBJ (1-based indices, coordinates
/// printed with 9 significant digits). 2D meshes are written with z = 0.
/// rest_vertices and explicit edges are not persisted.
void save_obj(const TriMesh& mesh, const std::string& path);

/// Regular k-gon inscribed in the unit circle, cycle edges (i, i+1 mod k).
/// Requires k >= 3.
TriMesh make_circle(int k);

/// Unit icosahedron subdivided `subdivisions` times (0..5 supported), each
/// level splitting every triangle in four, vertices re-projected to the unit
/// sphere. Watertight with consistent outward orientation.
/// V = 10*4^s + 2, F = 20*4^s.
TriMesh make_icosphere(int subdivisions);

/// Triangulated hexagonal disk: a triangular lattice with `rings` rings
/// around the center vertex, scaled to unit circumradius. rings=1 is the
/// 7-vertex hexagonal fan; vertex count is 1 + 3r(r+1), triangle count 6r^2.
/// rest_vertices is set to the generated vertices.
TriMesh make_disk(int rings);

/// Builds a mesh from a generator id ("circle:64", "icosphere:2", "disk:8")
/// or, failing that pattern, loads `source` as an OBJ path.
TriMesh make_mesh(std::string_view source, bool flatten_z = false);

} // namespace vadam
