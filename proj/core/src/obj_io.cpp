#include "vadam/mesh.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vadam {

namespace {

int parse_face_index(const std::string& token, int vertex_count, int line_no) {
    // "v", "v/vt", "v//vn", "v/vt/vn" -- only the vertex index matters.
    const std::string head = token.substr(0, token.find('/'));
    int idx = 0;
    try {
        size_t pos = 0;
        idx = std::stoi(head, &pos);
        if (pos != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
        throw std::invalid_argument("load_obj: line " + std::to_string(line_no) +
                                    ": bad face index '" + token + "'");
    }
    if (idx < 1 || idx > vertex_count) {
        throw std::invalid_argument("load_obj: line " + std::to_string(line_no) +
                                    ": vertex index " + std::to_string(idx) +
                                    " out of range [1, " +
                                    std::to_string(vertex_count) + "]");
    }
    return idx - 1;
}

} // namespace

TriMesh load_obj(const std::string& path, bool flatten_z) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("load_obj: cannot open '" + path + "'");
    }
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> face_lines; // for late index validation
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z = 0.0;
            if (!(ss >> x >> y)) {
                throw std::invalid_argument("load_obj: line " +
                                            std::to_string(line_no) +
                                            ": malformed vertex");
            }
            ss >> z; // optional third coordinate (defaults to 0)
            verts.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (tokens.size() != 3) {
                throw std::invalid_argument(
                    "load_obj: line " + std::to_string(line_no) + ": face with " +
                    std::to_string(tokens.size()) + " vertices (triangles only)");
            }
            // Range check deferred: v records may legally follow f records.
            const std::array<int, 3> f = {
                parse_face_index(tokens[0], 1 << 30, line_no),
                parse_face_index(tokens[1], 1 << 30, line_no),
                parse_face_index(tokens[2], 1 << 30, line_no)};
            if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
                throw std::invalid_argument("load_obj: line " +
                                            std::to_string(line_no) +
                                            ": repeated vertex in face");
            }
            faces.push_back(f);
            face_lines.push_back(line_no);
        }
        // vn / vt / o / g / s / usemtl / mtllib / l: ignored.
    }
    const int m = static_cast<int>(verts.size());
    if (m == 0) {
        throw std::invalid_argument("load_obj: '" + path + "' has no vertices");
    }
    for (size_t k = 0; k < faces.size(); ++k) {
        for (int idx : faces[k]) {
            if (idx < 0 || idx >= m) {
                throw std::invalid_argument(
                    "load_obj: line " + std::to_string(face_lines[k]) +
                    ": vertex index " + std::to_string(idx + 1) +
                    " out of range [1, " + std::to_string(m) + "]");
            }
        }
    }

    bool flat = true;
    for (const auto& v : verts) {
        if (std::abs(v.z()) >= 1e-9) {
            flat = false;
            break;
        }
    }
    if (flatten_z && !flat) {
        throw std::invalid_argument("load_obj: flatten_z requested but '" + path +
                                    "' has vertices with |z| >= 1e-9");
    }

    TriMesh mesh;
    const Eigen::Index n = flatten_z ? 2 : 3;
    mesh.vertices.resize(m, n);
    for (int i = 0; i < m; ++i) {
        mesh.vertices(i, 0) = verts[static_cast<size_t>(i)].x();
        mesh.vertices(i, 1) = verts[static_cast<size_t>(i)].y();
        if (n == 3) mesh.vertices(i, 2) = verts[static_cast<size_t>(i)].z();
    }
    mesh.triangles = std::move(faces);
    mesh.rest_vertices = mesh.vertices;
    mesh.validate();
    return mesh;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (!out) {
        throw std::invalid_argument("save_obj: cannot open '" + path + "' for writing");
    }
    const Eigen::Index m = mesh.vertices.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
        const double z = mesh.dim() == 3 ? mesh.vertices(i, 2) : 0.0;
        std::fprintf(out, "v %.9g %.9g %.9g\n", mesh.vertices(i, 0),
                     mesh.vertices(i, 1), z);
    }
    for (const auto& t : mesh.triangles) {
        std::fprintf(out, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    std::fclose(out);
}

} // namespace vadam
