#include "doctest.h"
#include "ltl/mesh.hpp"
#include "ltl/mesh_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ltl;

namespace {

std::filesystem::path tmp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

TriangleMesh tetrahedron() {
  TriangleMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("OFF and OBJ round trips preserve geometry and connectivity") {
  const TriangleMesh m = tetrahedron();
  for (MeshFormat fmt : {MeshFormat::OFF, MeshFormat::OBJ}) {
    const auto path =
        tmp_path(fmt == MeshFormat::OFF ? "rt_tet.off" : "rt_tet.obj");
    save_mesh(m, path.string(), fmt);
    const TriangleMesh back = load_mesh(path.string(), fmt);
    REQUIRE(back.n_vertices() == m.n_vertices());
    REQUIRE(back.faces == m.faces);
    for (int v = 0; v < m.n_vertices(); ++v)
      CHECK((back.vertices[v] - m.vertices[v]).norm() == 0.0);
  }
}

TEST_CASE("round trip of a generated mesh is exact") {
  const TriangleMesh m = gen_icosphere(2);
  const auto path = tmp_path("rt_sphere.off");
  save_mesh(m, path.string());
  const TriangleMesh back = load_mesh(path.string());
  CHECK(back.faces == m.faces);
  for (int v = 0; v < m.n_vertices(); ++v)
    CHECK((back.vertices[v] - m.vertices[v]).norm() == 0.0);
}

TEST_CASE("OBJ quad faces are rejected with the line number") {
  const auto path = tmp_path("quad.obj");
  {
    std::ofstream out(path);
    out << "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n";
    out << "f 1 2 3 4\n";
  }
  try {
    load_mesh(path.string());
    FAIL("expected UnsupportedElementError");
  } catch (const UnsupportedElementError& e) {
    CHECK(e.line == 5);
  }
}

TEST_CASE("OFF parse errors carry line numbers") {
  const auto path = tmp_path("bad.off");
  {
    std::ofstream out(path);
    out << "OFF\n2 1 0\n0 0 0\nnot a number\n";
  }
  try {
    load_mesh(path.string());
    FAIL("expected FileParseError");
  } catch (const FileParseError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("PLY export declares one float property per field") {
  const TriangleMesh m = tetrahedron();
  Eigen::VectorXd u(4);
  u << 1, 2, 3, 4;
  const auto path = tmp_path("fields.ply");
  save_mesh(m, path.string(), MeshFormat::PLY, {{"u", u}});
  const std::string text = slurp(path);
  CHECK(text.find("property float u\n") != std::string::npos);
  CHECK(text.find("element vertex 4") != std::string::npos);
  // exactly 4 float properties: x, y, z, u
  size_t count = 0, pos = 0;
  while ((pos = text.find("property float", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 4);
}

TEST_CASE("unknown extension is rejected") {
  CHECK_THROWS_AS(format_from_path("mesh.stl"), FileParseError);
}
