#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "ltl/mesh.hpp"

namespace ltl {

enum class MeshFormat { OFF, OBJ, PLY };

// Guesses from the extension; throws FileParseError on unknown extensions.
MeshFormat format_from_path(const std::string& path);

// ASCII OFF/OBJ, triangles only. Parse failures carry the line number.
TriangleMesh load_mesh(const std::string& path, MeshFormat format);
TriangleMesh load_mesh(const std::string& path);

// Named per-vertex scalar fields; only PLY output embeds them (one float
// property per field, lowercase names).
using NamedField = std::pair<std::string, Eigen::VectorXd>;

void save_mesh(const TriangleMesh& mesh, const std::string& path,
               MeshFormat format, const std::vector<NamedField>& fields = {});
void save_mesh(const TriangleMesh& mesh, const std::string& path);

}  // namespace ltl
