#pragma once

// Quad grid meshes and OBJ / binary PLY export.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bonnet/quat.hpp"

namespace bonnet {

struct Mesh {
    int nu = 0, nv = 0;
    std::array<bool, 2> closed{false, false};
    std::vector<Vec3> vertices;  // index i * nv + j
    std::vector<std::array<int, 4>> faces;
    std::map<std::string, std::vector<double>> scalars;  // per vertex
    std::string comment;
};

enum class MeshFormat { obj, ply };

// Quad faces of an nu x nv grid; closed directions wrap around.
Mesh grid_mesh(int nu, int nv, bool closed_u, bool closed_v, std::vector<Vec3> vertices);

void export_mesh(const Mesh& m, const std::string& path, MeshFormat fmt);
MeshFormat format_from_path(const std::string& path);

// Read back files written by export_mesh (grid shape comes from the header comments).
Mesh read_mesh(const std::string& path);

}  // namespace bonnet
