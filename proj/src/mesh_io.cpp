#include "ltl/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ltl/errors.hpp"

namespace ltl {

namespace {

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool blank_or_comment(const std::string& line, char comment) {
  for (char c : line) {
    if (c == comment) return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

void check_finite(const TriangleMesh& mesh, long line_hint) {
  for (const Vec3& p : mesh.vertices)
    if (!p.allFinite())
      throw FileParseError("non-finite vertex position", line_hint);
}

TriangleMesh load_off(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  long line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!blank_or_comment(out, '#')) return true;
    }
    return false;
  };

  if (!next_line(line) || line.substr(0, 3) != "OFF")
    throw FileParseError("missing OFF header", line_no);
  if (!next_line(line)) throw FileParseError("missing count line", line_no);
  long nv = 0, nf = 0, ne = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne) || nv < 0 || nf < 0)
      throw FileParseError("malformed count line", line_no);
  }
  mesh.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_line(line))
      throw FileParseError("unexpected end of file in vertex list", line_no);
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z))
      throw FileParseError("malformed vertex line", line_no);
    mesh.vertices.emplace_back(x, y, z);
  }
  mesh.faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    if (!next_line(line))
      throw FileParseError("unexpected end of file in face list", line_no);
    std::istringstream ss(line);
    int count;
    if (!(ss >> count)) throw FileParseError("malformed face line", line_no);
    if (count != 3)
      throw UnsupportedElementError(
          "only triangular faces are supported (got " + std::to_string(count) +
              " vertices)",
          line_no);
    std::array<int, 3> f{};
    if (!(ss >> f[0] >> f[1] >> f[2]))
      throw FileParseError("malformed face line", line_no);
    mesh.faces.push_back(f);
  }
  check_finite(mesh, -1);
  return mesh;
}

int parse_obj_index(const std::string& token, long nv, long line_no) {
  // "i", "i/j", "i/j/k", "i//k" all reference vertex i (1-based).
  const auto slash = token.find('/');
  const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  long i = 0;
  try {
    i = std::stol(head);
  } catch (const std::exception&) {
    throw FileParseError("malformed face index '" + token + "'", line_no);
  }
  if (i < 0) i = nv + 1 + i;  // negative indices are relative
  if (i < 1 || i > nv)
    throw FileParseError("face index " + head + " out of range", line_no);
  return static_cast<int>(i - 1);
}

TriangleMesh load_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line, '#')) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z))
        throw FileParseError("malformed vertex line", line_no);
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (tokens.size() != 3)
        throw UnsupportedElementError(
            "only triangular faces are supported (got " +
                std::to_string(tokens.size()) + " vertices)",
            line_no);
      std::array<int, 3> f{};
      for (int k = 0; k < 3; ++k)
        f[k] = parse_obj_index(tokens[k], mesh.n_vertices(), line_no);
      mesh.faces.push_back(f);
    }
    // vn/vt/usemtl/o/g/s lines are ignored.
  }
  check_finite(mesh, -1);
  return mesh;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

MeshFormat format_from_path(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == "off") return MeshFormat::OFF;
  if (ext == "obj") return MeshFormat::OBJ;
  if (ext == "ply") return MeshFormat::PLY;
  throw FileParseError("cannot infer mesh format from extension '." + ext +
                       "'");
}

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw FileParseError("cannot open '" + path + "'");
  switch (format) {
    case MeshFormat::OFF:
      return load_off(in);
    case MeshFormat::OBJ:
      return load_obj(in);
    default:
      throw FileParseError("PLY input is not supported");
  }
}

TriangleMesh load_mesh(const std::string& path) {
  return load_mesh(path, format_from_path(path));
}

void save_mesh(const TriangleMesh& mesh, const std::string& path,
               MeshFormat format, const std::vector<NamedField>& fields) {
  for (const auto& [name, values] : fields)
    if (values.size() != mesh.n_vertices())
      throw Error("field '" + name + "' length does not match vertex count");

  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  switch (format) {
    case MeshFormat::OFF: {
      out << "OFF\n"
          << mesh.n_vertices() << ' ' << mesh.n_faces() << " 0\n";
      for (const Vec3& p : mesh.vertices)
        out << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';
      for (const auto& f : mesh.faces)
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
      break;
    }
    case MeshFormat::OBJ: {
      for (const Vec3& p : mesh.vertices)
        out << "v " << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z())
            << '\n';
      for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
      break;
    }
    case MeshFormat::PLY: {
      out << "ply\nformat ascii 1.0\n";
      out << "element vertex " << mesh.n_vertices() << '\n';
      out << "property float x\nproperty float y\nproperty float z\n";
      for (const auto& [name, _] : fields) {
        std::string lname = name;
        std::transform(lname.begin(), lname.end(), lname.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        out << "property float " << lname << '\n';
      }
      out << "element face " << mesh.n_faces() << '\n';
      out << "property list uchar int vertex_indices\nend_header\n";
      for (int v = 0; v < mesh.n_vertices(); ++v) {
        const Vec3& p = mesh.vertices[v];
        out << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z());
        for (const auto& [name, values] : fields)
          out << ' ' << fmt(static_cast<float>(values[v]));
        out << '\n';
      }
      for (const auto& f : mesh.faces)
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
      break;
    }
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  save_mesh(mesh, path, format_from_path(path));
}

}  // namespace ltl
