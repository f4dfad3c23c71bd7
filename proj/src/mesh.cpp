#include "ltl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace ltl {

double bbox_diagonal(const TriangleMesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  Vec3 lo = mesh.vertices.front();
  Vec3 hi = lo;
  for (const Vec3& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double face_area(const TriangleMesh& mesh, int f) {
  const auto& t = mesh.faces[f];
  const Vec3 e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
  const Vec3 e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
  return 0.5 * e1.cross(e2).norm();
}

Vec3 face_normal(const TriangleMesh& mesh, int f) {
  const auto& t = mesh.faces[f];
  const Vec3 e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
  const Vec3 e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
  return e1.cross(e2).normalized();
}

namespace {

void check_face_indices(const TriangleMesh& mesh) {
  const int n = mesh.n_vertices();
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= n)
        throw MeshError("face " + std::to_string(f) + " references vertex " +
                        std::to_string(t[k]) + " outside [0, " +
                        std::to_string(n) + ")");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError("face " + std::to_string(f) +
                      " has repeated vertex indices");
  }
}

}  // namespace

VertexStar build_adjacency(const TriangleMesh& mesh) {
  check_face_indices(mesh);
  const int n = mesh.n_vertices();

  // Around v, a ccw face (v, a, b) contributes the transition a -> b.
  // next[v] maps a -> (b, face); a second mapping for the same a means a
  // non-manifold directed edge fan.
  std::vector<std::map<int, std::pair<int, int>>> next(n);
  std::vector<std::map<int, int>> incoming(n);  // b -> count of a->b arrivals
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int v = t[k];
      const int a = t[(k + 1) % 3];
      const int b = t[(k + 2) % 3];
      auto [it, inserted] = next[v].emplace(a, std::make_pair(b, f));
      if (!inserted)
        throw NonManifoldError("non-manifold edge (" + std::to_string(v) +
                                   ", " + std::to_string(a) + ")",
                               v, a);
      if (++incoming[v][b] > 1)
        throw NonManifoldError("non-manifold edge (" + std::to_string(v) +
                                   ", " + std::to_string(b) + ")",
                               v, b);
    }
  }

  VertexStar star;
  star.neighbors.resize(n);
  star.faces.resize(n);
  star.interior.assign(n, false);

  for (int v = 0; v < n; ++v) {
    if (next[v].empty()) continue;
    // Boundary start: a neighbor reachable as 'a' but never as 'b'.
    // Interior start: smallest neighbor index, for determinism.
    int start = -1;
    for (const auto& [a, _] : next[v]) {
      if (incoming[v].find(a) == incoming[v].end()) {
        start = a;
        break;
      }
    }
    const bool is_interior = (start < 0);
    if (is_interior) start = next[v].begin()->first;

    int cur = start;
    star.neighbors[v].push_back(cur);
    while (true) {
      auto it = next[v].find(cur);
      if (it == next[v].end()) break;  // boundary chain ends
      star.faces[v].push_back(it->second.second);
      cur = it->second.first;
      if (cur == start) break;  // closed cycle
      star.neighbors[v].push_back(cur);
    }
    if (star.faces[v].size() != next[v].size())
      throw NonManifoldError("vertex " + std::to_string(v) +
                                 " has a disconnected face fan",
                             v, -1);
    star.interior[v] = is_interior;
  }
  return star;
}

MeshDiagnostics validate(const TriangleMesh& mesh, const Tolerances& tol) {
  MeshDiagnostics d;
  const double diag = bbox_diagonal(mesh);
  const double area_eps = tol.degenerate_area_rel * diag * diag;

  d.min_face_area = std::numeric_limits<double>::infinity();
  d.min_edge_length = std::numeric_limits<double>::infinity();
  d.max_face_area = 0.0;

  struct EdgeUse {
    int undirected = 0;
    int forward = 0;  // (min, max) direction
  };
  std::map<std::pair<int, int>, EdgeUse> edges;

  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces[f];
    const double area = face_area(mesh, f);
    d.min_face_area = std::min(d.min_face_area, area);
    d.max_face_area = std::max(d.max_face_area, area);
    if (area < area_eps) ++d.degenerate_face_count;
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      d.min_edge_length = std::min(
          d.min_edge_length, (mesh.vertices[a] - mesh.vertices[b]).norm());
      EdgeUse& e = edges[{std::min(a, b), std::max(a, b)}];
      ++e.undirected;
      if (a < b) ++e.forward;
    }
  }
  if (mesh.n_faces() == 0) {
    d.min_face_area = d.max_face_area = 0.0;
    d.min_edge_length = 0.0;
  }

  d.edge_count = static_cast<int>(edges.size());
  for (const auto& [key, e] : edges) {
    if (e.undirected == 1) ++d.boundary_edge_count;
    if (e.undirected > 2) ++d.nonmanifold_edge_count;
    // Two faces traversing the same direction: duplicated directed edge.
    const int backward = e.undirected - e.forward;
    if (e.forward > 1 || backward > 1) ++d.orientation_conflict_count;
  }
  return d;
}

long euler_characteristic(const TriangleMesh& mesh) {
  const MeshDiagnostics d = validate(mesh);
  return static_cast<long>(mesh.n_vertices()) - d.edge_count + mesh.n_faces();
}

TriangleMesh gen_icosphere(int subdivisions) {
  if (subdivisions < 0) throw SizeError("subdivisions must be non-negative");
  if (subdivisions > kIcosphereSubdivisionCap)
    throw SizeError("subdivision level " + std::to_string(subdivisions) +
                    " exceeds cap " + std::to_string(kIcosphereSubdivisionCap));

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh m;
  m.vertices = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
                {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
                {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : m.vertices) v.normalize();
  m.faces = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = m.n_vertices();
      m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(m.faces.size() * 4);
    for (const auto& t : m.faces) {
      const int ab = mid(t[0], t[1]);
      const int bc = mid(t[1], t[2]);
      const int ca = mid(t[2], t[0]);
      faces.push_back({t[0], ab, ca});
      faces.push_back({t[1], bc, ab});
      faces.push_back({t[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    m.faces = std::move(faces);
  }
  return m;
}

TriangleMesh gen_torus(double a, double r, int nu, int nv) {
  if (!(a > r && r > 0))
    throw GeometryError("torus requires a > r > 0 (self-intersection)");
  if (nu < 3 || nv < 3) throw GeometryError("torus requires nu, nv >= 3");

  TriangleMesh m;
  m.vertices.reserve(static_cast<size_t>(nu) * nv);
  m.params.reserve(static_cast<size_t>(nu) * nv);
  const double two_pi = 2.0 * M_PI;
  for (int i = 0; i < nu; ++i) {
    const double x = two_pi * i / nu;  // minor angle
    for (int j = 0; j < nv; ++j) {
      const double y = two_pi * j / nv;  // major angle
      const double ring = a + r * std::cos(x);
      m.vertices.emplace_back(ring * std::cos(y), ring * std::sin(y),
                              r * std::sin(x));
      m.params.emplace_back(x, y);
    }
  }
  auto idx = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  m.faces.reserve(static_cast<size_t>(2) * nu * nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const int v00 = idx(i, j);
      const int v01 = idx(i, j + 1);
      const int v10 = idx(i + 1, j);
      const int v11 = idx(i + 1, j + 1);
      // Outward orientation: x_v x x_u points out of the torus.
      // Prefer odd nu and nv for long diffusion runs: the composed
      // gradient-of-gradient Laplacian decouples even-sized grids into
      // checkerboard sublattices, leaving near-neutral alternating modes
      // (zero or slightly positive real part) that stall convergence.
      m.faces.push_back({v00, v01, v11});
      m.faces.push_back({v00, v11, v10});
    }
  }
  return m;
}

}  // namespace ltl
