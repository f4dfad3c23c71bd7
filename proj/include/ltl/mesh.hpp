#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "ltl/errors.hpp"

namespace ltl {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Indexed triangle soup. Faces are counterclockwise when viewed from
// outside. `params` optionally stores a per-vertex (u, v) parameter pair
// for meshes produced by parametric generators; empty otherwise.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec2> params;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  bool has_params() const { return !params.empty(); }
};

// One-ring adjacency. For interior vertices of a closed mesh the neighbor
// list is a single cycle in counterclockwise order; incident face k lies
// between neighbors[k] and neighbors[(k+1) % valence]. For boundary
// vertices the list is a chain starting at a boundary edge and there are
// valence-1 incident faces.
struct VertexStar {
  std::vector<std::vector<int>> neighbors;
  std::vector<std::vector<int>> faces;
  std::vector<bool> interior;

  int valence(int v) const { return static_cast<int>(neighbors[v].size()); }
};

struct MeshDiagnostics {
  int boundary_edge_count = 0;
  int nonmanifold_edge_count = 0;
  int degenerate_face_count = 0;
  int orientation_conflict_count = 0;
  int edge_count = 0;
  double min_face_area = 0.0;
  double max_face_area = 0.0;
  double min_edge_length = 0.0;

  bool solver_ready() const {
    return boundary_edge_count == 0 && nonmanifold_edge_count == 0 &&
           degenerate_face_count == 0 && orientation_conflict_count == 0;
  }
};

// Numeric knobs shared by mesh checks and the discrete operators.
struct Tolerances {
  double degenerate_area_rel = 1e-12;  // x bbox_diag^2
  double gram_rel = 1e-14;             // x <vi,vi><vj,vj>
  double seed_parallel = 1e-8;         // edge direction vs normal
};

double bbox_diagonal(const TriangleMesh& mesh);
double face_area(const TriangleMesh& mesh, int f);
Vec3 face_normal(const TriangleMesh& mesh, int f);

// Throws on out-of-range or repeated face indices and non-manifold edges.
// Deterministic: identical input produces identical star ordering.
VertexStar build_adjacency(const TriangleMesh& mesh);

// Pure single-pass defect report; never throws on defects.
MeshDiagnostics validate(const TriangleMesh& mesh,
                         const Tolerances& tol = Tolerances{});

// V - E + F; requires validate() to have found a sane edge set.
long euler_characteristic(const TriangleMesh& mesh);

// Unit-sphere approximation by repeated icosahedron subdivision with
// re-projection. Vertex/face counts are 10*4^s + 2 and 20*4^s.
TriangleMesh gen_icosphere(int subdivisions);
constexpr int kIcosphereSubdivisionCap = 8;

// Torus ((a + r cos x) cos y, (a + r cos x) sin y, r sin x) sampled on an
// nu x nv parameter grid with wraparound. Stores (x, y) in params.
TriangleMesh gen_torus(double a, double r, int nu, int nv);

}  // namespace ltl
