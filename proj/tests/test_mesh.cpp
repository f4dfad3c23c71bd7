#include "doctest.h"
#include "ltl/mesh.hpp"
#include "test_support.hpp"

#include <map>
#include <set>

using namespace ltl;

namespace {

TriangleMesh tetrahedron() {
  TriangleMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

// Independent valence count straight off the face list.
std::map<int, int> valence_histogram(const TriangleMesh& m) {
  std::vector<std::set<int>> nbs(m.n_vertices());
  for (const auto& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      nbs[f[k]].insert(f[(k + 1) % 3]);
      nbs[f[k]].insert(f[(k + 2) % 3]);
    }
  }
  std::map<int, int> hist;
  for (const auto& s : nbs) ++hist[static_cast<int>(s.size())];
  return hist;
}

}  // namespace

TEST_CASE("adjacency of a single triangle") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  const VertexStar star = build_adjacency(m);
  for (int v = 0; v < 3; ++v) {
    CHECK(star.neighbors[v].size() == 2);
    CHECK(star.faces[v].size() == 1);
    CHECK_FALSE(star.interior[v]);
  }
}

TEST_CASE("adjacency of a tetrahedron") {
  const TriangleMesh m = tetrahedron();
  const VertexStar star = build_adjacency(m);
  for (int v = 0; v < 4; ++v) {
    CHECK(star.neighbors[v].size() == 3);
    CHECK(star.faces[v].size() == 3);
    CHECK(star.interior[v]);
  }
}

TEST_CASE("icosphere subdiv 1 valences match brute-force enumeration") {
  const TriangleMesh m = gen_icosphere(1);
  REQUIRE(m.n_vertices() == 42);
  const auto hist = valence_histogram(m);
  CHECK(hist.at(5) == 12);
  CHECK(hist.at(6) == 30);

  const VertexStar star = build_adjacency(m);
  std::map<int, int> star_hist;
  for (int v = 0; v < m.n_vertices(); ++v)
    ++star_hist[star.valence(v)];
  CHECK(star_hist == hist);
}

TEST_CASE("adjacency is deterministic") {
  const TriangleMesh m = gen_icosphere(2);
  const VertexStar a = build_adjacency(m);
  const VertexStar b = build_adjacency(m);
  CHECK(a.neighbors == b.neighbors);
  CHECK(a.faces == b.faces);
}

TEST_CASE("non-manifold edge is rejected") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}};
  m.faces = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};  // edge (0,1) in 3 faces
  CHECK_THROWS_AS(build_adjacency(m), NonManifoldError);
}

TEST_CASE("icosphere generator") {
  SUBCASE("subdivision 0 is the icosahedron") {
    const TriangleMesh m = gen_icosphere(0);
    CHECK(m.n_vertices() == 12);
    CHECK(m.n_faces() == 20);
  }
  SUBCASE("counts follow 10*4^s + 2 and 20*4^s") {
    const TriangleMesh m = gen_icosphere(2);
    CHECK(m.n_vertices() == 162);
    CHECK(m.n_faces() == 320);
  }
  SUBCASE("vertices sit on the unit sphere") {
    const TriangleMesh m = gen_icosphere(3);
    double worst = 0;
    for (const Vec3& v : m.vertices)
      worst = std::max(worst, std::abs(v.norm() - 1.0));
    CHECK(worst < 1e-12);
  }
  SUBCASE("output is solver-ready") {
    for (int s : {0, 1, 2}) {
      const MeshDiagnostics d = validate(gen_icosphere(s));
      CHECK(d.solver_ready());
    }
  }
  SUBCASE("cap") { CHECK_THROWS_AS(gen_icosphere(9), SizeError); }
}

TEST_CASE("torus generator") {
  SUBCASE("minimal wraparound grid") {
    const TriangleMesh m = gen_torus(2, 1, 4, 4);
    CHECK(m.n_vertices() == 16);
    CHECK(m.n_faces() == 32);
    CHECK(validate(m).boundary_edge_count == 0);
  }
  SUBCASE("vertices satisfy the implicit torus equation") {
    const TriangleMesh m = gen_torus(2, 1, 16, 24);
    for (const Vec3& p : m.vertices) {
      const double ring = std::sqrt(p.x() * p.x() + p.y() * p.y()) - 2.0;
      CHECK(std::abs(ring * ring + p.z() * p.z() - 1.0) < 1e-12);
    }
  }
  SUBCASE("stored params reproduce positions") {
    const TriangleMesh m = gen_torus(2, 1, 8, 12);
    REQUIRE(m.has_params());
    for (int v = 0; v < m.n_vertices(); ++v) {
      const double x = m.params[v].x(), y = m.params[v].y();
      const Vec3 q((2 + std::cos(x)) * std::cos(y),
                   (2 + std::cos(x)) * std::sin(y), std::sin(x));
      CHECK((q - m.vertices[v]).norm() < 1e-14);
    }
  }
  SUBCASE("self-intersecting parameters are rejected") {
    CHECK_THROWS_AS(gen_torus(1, 2, 8, 8), GeometryError);
  }
  SUBCASE("output is solver-ready and consistently oriented") {
    CHECK(validate(gen_torus(2, 1, 8, 16)).solver_ready());
  }
}

TEST_CASE("Euler characteristic of generator families") {
  for (int s : {0, 1, 2, 3})
    CHECK(euler_characteristic(gen_icosphere(s)) == 2);
  CHECK(euler_characteristic(gen_torus(2, 1, 4, 4)) == 0);
  CHECK(euler_characteristic(gen_torus(2, 1, 7, 11)) == 0);
  CHECK(euler_characteristic(gen_torus(3, 0.5, 12, 6)) == 0);
}

TEST_CASE("validate reports defects without throwing") {
  SUBCASE("single triangle has 3 boundary edges") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.faces = {{0, 1, 2}};
    const MeshDiagnostics d = validate(m);
    CHECK(d.boundary_edge_count == 3);
    CHECK_FALSE(d.solver_ready());
  }
  SUBCASE("same-winding neighbors give one orientation conflict") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    // both faces traverse edge (0,1) in the same direction
    m.faces = {{0, 1, 2}, {0, 1, 3}};
    CHECK(validate(m).orientation_conflict_count == 1);
  }
  SUBCASE("degenerate face is counted") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}};
    m.faces = {{0, 1, 2}, {0, 1, 3}};
    CHECK(validate(m).degenerate_face_count == 1);
  }
}

TEST_CASE("jittered grid test fixture is sane") {
  const TriangleMesh m = ltl::testing::make_jittered_grid(10, 0.2, 7);
  const MeshDiagnostics d = validate(m);
  CHECK(d.nonmanifold_edge_count == 0);
  CHECK(d.orientation_conflict_count == 0);
  CHECK(d.degenerate_face_count == 0);
  CHECK(d.boundary_edge_count > 0);
}
