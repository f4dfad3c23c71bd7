// Command-line front end: mesh generation/inspection, operator application,
// PDE runs, and convergence reports against the analytic oracle.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "ltl/errors.hpp"
#include "ltl/field_expr.hpp"
#include "ltl/mesh.hpp"
#include "ltl/mesh_fields.hpp"
#include "ltl/mesh_io.hpp"
#include "ltl/operators.hpp"
#include "ltl/oracle.hpp"
#include "ltl/solvers.hpp"

namespace fs = std::filesystem;
using namespace ltl;

namespace {

// Exit code contract: 0 success, 2 input/precondition, 3 operator,
// 4 solver blow-up, 5 configuration.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kOperatorError = 3;
constexpr int kBlowUp = 4;
constexpr int kConfigError = 5;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- mesh source ------------------------------------------------------

struct MeshSource {
  std::string path;  // file
  std::string gen;   // generator spec, e.g. "sphere:subdiv=3"
};

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error("malformed generator argument '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

TriangleMesh mesh_from_gen_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto args = colon == std::string::npos
                        ? std::map<std::string, std::string>{}
                        : parse_kv(spec.substr(colon + 1));
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = args.find(key);
    return it == args.end() ? fallback : it->second;
  };
  if (kind == "sphere") return gen_icosphere(std::stoi(get("subdiv", "3")));
  if (kind == "torus")
    return gen_torus(std::stod(get("a", "2")), std::stod(get("r", "1")),
                     std::stoi(get("nu", "25")), std::stoi(get("nv", "49")));
  throw Error("unknown generator '" + kind + "' (expected sphere or torus)");
}

TriangleMesh resolve_mesh(const MeshSource& src) {
  if (src.path.empty() == src.gen.empty())
    throw Error("exactly one mesh source required (--mesh or --gen)");
  return src.path.empty() ? mesh_from_gen_spec(src.gen) : load_mesh(src.path);
}

std::string describe_source(const MeshSource& src) {
  return src.path.empty() ? "gen:" + src.gen : "file:" + src.path;
}

void require_solver_ready(const TriangleMesh& mesh) {
  const MeshDiagnostics d = validate(mesh);
  if (!d.solver_ready())
    throw OperatorError(
        "mesh is not solver-ready (boundary edges: " +
        std::to_string(d.boundary_edge_count) +
        ", non-manifold: " + std::to_string(d.nonmanifold_edge_count) +
        ", degenerate faces: " + std::to_string(d.degenerate_face_count) +
        ", orientation conflicts: " +
        std::to_string(d.orientation_conflict_count) + ")");
}

// ---- metadata ---------------------------------------------------------

struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;
  void add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, fmt(value)); }
  void add(const std::string& key, long value) {
    add(key, std::to_string(value));
  }
  void write(const fs::path& path) const {
    std::ofstream out(path);
    out << "schema=ltl-run-1\n";
    for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  }
};

void add_mesh_stats(Metadata& md, const TriangleMesh& mesh,
                    const MeshSource& src) {
  const MeshDiagnostics d = validate(mesh);
  md.add("mesh.source", describe_source(src));
  md.add("mesh.n_vertices", static_cast<long>(mesh.n_vertices()));
  md.add("mesh.n_faces", static_cast<long>(mesh.n_faces()));
  md.add("mesh.n_edges", static_cast<long>(d.edge_count));
  md.add("mesh.min_edge_length", d.min_edge_length);
  md.add("mesh.has_params", std::string(mesh.has_params() ? "yes" : "no"));
}

void add_conventions(Metadata& md) {
  md.add("convention.torus_embedding",
         "((a + r cos x) cos y, (a + r cos x) sin y, r sin x)");
  md.add("convention.turing_reaction_u2", "du2/dt = s(u1 u2 - u2 - gamma)");
}

// ---- field output -----------------------------------------------------

void write_scalar_csv(const fs::path& path, const TriangleMesh& mesh,
                      const std::vector<NamedField>& fields) {
  std::ofstream out(path);
  out << "# schema=ltl-field-csv-1\n";
  out << "vertex,x,y,z";
  for (const auto& [name, _] : fields) out << ',' << name;
  out << '\n';
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Vec3& p = mesh.vertices[v];
    out << v << ',' << fmt(p.x()) << ',' << fmt(p.y()) << ',' << fmt(p.z());
    for (const auto& [_, values] : fields) out << ',' << fmt(values[v]);
    out << '\n';
  }
}

void write_fields(const fs::path& path, const TriangleMesh& mesh,
                  const std::vector<NamedField>& fields) {
  const std::string ext = path.extension().string();
  if (ext == ".csv")
    write_scalar_csv(path, mesh, fields);
  else
    save_mesh(mesh, path.string(), MeshFormat::PLY, fields);
}

// ---- verification -----------------------------------------------------

std::uint64_t fnv1a_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

bool files_identical(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

// ---- solve commands ---------------------------------------------------

struct SolveCommon {
  MeshSource src;
  std::string dt_str = "auto";
  int max_steps = 200000;
  double steady_tol = 1e-6;
  std::string out_dir;
  std::string format = "ply";
  bool verify = false;
};

double resolve_dt(const std::string& dt_str, const TriangleMesh& mesh) {
  if (dt_str == "auto") return stability_dt(mesh);
  const double dt = std::stod(dt_str);
  if (!(dt > 0)) throw Error("dt must be positive");
  return dt;
}

struct HeatCli {
  SolveCommon common;
  std::string g_expr = "0";
  std::string u0_expr = "0";
};

struct TuringCli {
  SolveCommon common;
  double alpha = 1, beta = 2, s = 2, gamma_amp = 0;
  std::uint64_t seed = 0;
  std::string u10_expr = "1";
  std::string u20_expr = "1";
};

std::vector<fs::path> write_trace(const fs::path& dir,
                                  const TriangleMesh& mesh,
                                  const SolveTrace& trace,
                                  const std::string& format) {
  std::vector<fs::path> written;
  const std::string ext = format == "csv" ? ".csv" : ".ply";
  for (size_t i = 0; i < trace.snapshots.size(); ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "snap_%07d%s", trace.snapshot_steps[i],
                  ext.c_str());
    std::vector<NamedField> fields(trace.snapshots[i].begin(),
                                   trace.snapshots[i].end());
    const fs::path path = dir / name;
    write_fields(path, mesh, fields);
    written.push_back(path);
  }
  return written;
}

// Runs one solve into `dir` and returns the files written (metadata last).
template <typename Runner>
std::vector<fs::path> execute_solve(const fs::path& dir, Runner&& runner) {
  fs::create_directories(dir);
  return runner(dir);
}

template <typename Runner>
int finish_solve(const SolveCommon& common, Runner&& runner,
                 Termination* reason_out) {
  const fs::path dir(common.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<fs::path> files = execute_solve(dir, runner);
  const auto t1 = std::chrono::steady_clock::now();
  {
    std::ofstream timing(dir / "timings.txt");
    timing << "wall_clock_seconds="
           << std::chrono::duration<double>(t1 - t0).count() << '\n';
  }
  if (common.verify) {
    const fs::path vdir = dir / ".verify";
    const std::vector<fs::path> vfiles = execute_solve(vdir, runner);
    bool ok = files.size() == vfiles.size();
    for (size_t i = 0; ok && i < files.size(); ++i)
      ok = files_identical(files[i], vfiles[i]);
    fs::remove_all(vdir);
    if (!ok) {
      std::cerr << "verify: outputs differ between runs\n";
      return kConfigError;
    }
    std::cout << "verify: ok\n";
  }
  std::cout << "termination: " << to_string(*reason_out) << '\n';
  for (const fs::path& f : files)
    std::cout << "wrote " << f.string() << " fnv1a="
              << std::hex << fnv1a_file(f) << std::dec << '\n';
  return *reason_out == Termination::blow_up ? kBlowUp : kOk;
}

int run_heat_cmd(const HeatCli& cli) {
  const TriangleMesh mesh = resolve_mesh(cli.common.src);
  require_solver_ready(mesh);
  const double dt = resolve_dt(cli.common.dt_str, mesh);
  const FieldExpr g_expr = parse_field(cli.g_expr);
  const FieldExpr u0_expr = parse_field(cli.u0_expr);

  Termination reason = Termination::max_steps;
  auto runner = [&](const fs::path& dir) {
    HeatProblem p;
    p.mesh = &mesh;
    p.source = evaluate_on_mesh(g_expr, mesh);
    p.initial = evaluate_on_mesh(u0_expr, mesh);
    p.dt = dt;
    p.max_steps = cli.common.max_steps;
    p.steady_tol = cli.common.steady_tol;
    const SolveTrace trace = run_heat(p);
    reason = trace.reason;

    std::vector<fs::path> files =
        write_trace(dir, mesh, trace, cli.common.format);
    Metadata md;
    md.add("command", std::string("solve heat"));
    add_mesh_stats(md, mesh, cli.common.src);
    add_conventions(md);
    md.add("field.g", cli.g_expr);
    md.add("field.u0", cli.u0_expr);
    md.add("solver.dt", dt);
    md.add("solver.dt_source",
           std::string(cli.common.dt_str == "auto" ? "auto" : "explicit"));
    md.add("solver.max_steps", static_cast<long>(cli.common.max_steps));
    md.add("solver.steady_tol", cli.common.steady_tol);
    md.add("termination", std::string(to_string(trace.reason)));
    md.add("steps_executed", static_cast<long>(trace.steps_executed));
    if (!trace.max_update.empty()) {
      md.add("final.max_update", trace.max_update.back());
      md.add("final.profile_update", trace.profile_update.back());
    }
    md.write(dir / "metadata.txt");
    files.push_back(dir / "metadata.txt");
    return files;
  };
  return finish_solve(cli.common, runner, &reason);
}

int run_turing_cmd(const TuringCli& cli) {
  const TriangleMesh mesh = resolve_mesh(cli.common.src);
  require_solver_ready(mesh);
  const double dt = resolve_dt(cli.common.dt_str, mesh);
  const FieldExpr u10_expr = parse_field(cli.u10_expr);
  const FieldExpr u20_expr = parse_field(cli.u20_expr);

  Termination reason = Termination::max_steps;
  auto runner = [&](const fs::path& dir) {
    TuringProblem p;
    p.mesh = &mesh;
    p.params = TuringParams{cli.alpha, cli.beta, cli.s};
    p.gamma_amplitude = cli.gamma_amp;
    p.seed = cli.seed;
    p.u1_initial = evaluate_on_mesh(u10_expr, mesh);
    p.u2_initial = evaluate_on_mesh(u20_expr, mesh);
    p.dt = dt;
    p.max_steps = cli.common.max_steps;
    p.steady_tol = cli.common.steady_tol;
    const SolveTrace trace = run_turing(p);
    reason = trace.reason;

    std::vector<fs::path> files =
        write_trace(dir, mesh, trace, cli.common.format);
    Metadata md;
    md.add("command", std::string("solve turing"));
    add_mesh_stats(md, mesh, cli.common.src);
    add_conventions(md);
    md.add("params.alpha", cli.alpha);
    md.add("params.beta", cli.beta);
    md.add("params.s", cli.s);
    md.add("params.gamma_amplitude", cli.gamma_amp);
    md.add("params.seed", static_cast<long>(cli.seed));
    md.add("field.u10", cli.u10_expr);
    md.add("field.u20", cli.u20_expr);
    md.add("solver.dt", dt);
    md.add("solver.dt_source",
           std::string(cli.common.dt_str == "auto" ? "auto" : "explicit"));
    md.add("solver.max_steps", static_cast<long>(cli.common.max_steps));
    md.add("solver.steady_tol", cli.common.steady_tol);
    md.add("termination", std::string(to_string(trace.reason)));
    md.add("steps_executed", static_cast<long>(trace.steps_executed));
    if (!trace.max_update.empty())
      md.add("final.max_update", trace.max_update.back());
    md.write(dir / "metadata.txt");
    files.push_back(dir / "metadata.txt");
    return files;
  };
  return finish_solve(cli.common, runner, &reason);
}

// ---- ops command ------------------------------------------------------

int run_ops_cmd(const std::string& which, const MeshSource& src,
                const std::string& field_expr, const std::string& out_path) {
  const TriangleMesh mesh = resolve_mesh(src);
  require_solver_ready(mesh);
  const FieldExpr expr = parse_field(field_expr);
  const VertexScalarField h = evaluate_on_mesh(expr, mesh);

  const VertexStar star = build_adjacency(mesh);
  const FrameField frames = build_frames(mesh, star);

  std::vector<NamedField> fields;
  if (which == "laplacian") {
    fields.emplace_back("laplacian", laplacian_field(mesh, star, frames, h));
  } else {
    const VertexTangentField g = gradient_field(mesh, star, frames, h);
    fields.emplace_back("gx", g.ambient.col(0));
    fields.emplace_back("gy", g.ambient.col(1));
    fields.emplace_back("gz", g.ambient.col(2));
  }
  const fs::path out(out_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_fields(out, mesh, fields);

  Metadata md;
  md.add("command", "ops " + which);
  add_mesh_stats(md, mesh, src);
  add_conventions(md);
  md.add("field.expr", field_expr);
  md.write(out_path + ".meta.txt");
  std::cout << "wrote " << out_path << '\n';
  return kOk;
}

// ---- convergence command ----------------------------------------------

struct OracleSample {
  double u, v;
  bool usable;
};

OracleSample sphere_chart(const Vec3& p) {
  const double u = std::acos(std::clamp(p.z(), -1.0, 1.0));
  double v = std::atan2(p.y(), p.x());
  if (v < 0) v += 2 * M_PI;
  const bool usable = u > 1e-3 && u < M_PI - 1e-3;  // pole band excluded
  return {u, v, usable};
}

int run_convergence_cmd(const std::string& family,
                        const std::vector<int>& levels,
                        const std::string& field_expr, const std::string& op,
                        const std::string& out_path) {
  const FieldExpr expr = parse_field(field_expr);
  const bool parametric_field = variables(expr).count(FieldVar::u) > 0 ||
                                variables(expr).count(FieldVar::v) > 0;
  if (family == "sphere" && parametric_field)
    throw Error(
        "oracle unavailable: sphere meshes store no (u, v) parameters; use "
        "ambient variables x1, x2, x3");

  const ParametricSurface surface =
      family == "sphere" ? make_unit_sphere() : make_torus(2, 1);
  const SurfaceFunction g = make_surface_function(expr, surface);

  std::ofstream out(out_path);
  out << "# schema=ltl-convergence-1\n";
  out << "level,n_vertices,h_min,l2_error,linf_error,estimated_order\n";

  double prev_l2 = 0;
  bool have_prev = false;
  for (int level : levels) {
    const TriangleMesh mesh =
        family == "sphere"
            ? gen_icosphere(level)
            : gen_torus(2, 1, 6 * (1 << level), 12 * (1 << level));
    const VertexStar star = build_adjacency(mesh);
    const FrameField frames = build_frames(mesh, star);
    const VertexScalarField h = evaluate_on_mesh(expr, mesh);

    double num = 0, den = 0, linf = 0;
    if (op == "laplacian") {
      const VertexScalarField lap = laplacian_field(mesh, star, frames, h);
      for (int v = 0; v < mesh.n_vertices(); ++v) {
        OracleSample s = mesh.has_params()
                             ? OracleSample{mesh.params[v].x(),
                                            mesh.params[v].y(), true}
                             : sphere_chart(mesh.vertices[v]);
        if (!s.usable) continue;
        const double exact = surface_laplacian(surface, g, s.u, s.v);
        num += (lap[v] - exact) * (lap[v] - exact);
        den += exact * exact;
        linf = std::max(linf, std::abs(lap[v] - exact));
      }
    } else {
      const VertexTangentField grad = gradient_field(mesh, star, frames, h);
      for (int v = 0; v < mesh.n_vertices(); ++v) {
        OracleSample s = mesh.has_params()
                             ? OracleSample{mesh.params[v].x(),
                                            mesh.params[v].y(), true}
                             : sphere_chart(mesh.vertices[v]);
        if (!s.usable) continue;
        const Vec3 exact = surface_gradient(surface, g, s.u, s.v);
        const Vec3 diff = grad.ambient.row(v).transpose() - exact;
        num += diff.squaredNorm();
        den += exact.squaredNorm();
        linf = std::max(linf, diff.norm());
      }
    }
    const double l2 = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
    out << level << ',' << mesh.n_vertices() << ','
        << fmt(validate(mesh).min_edge_length) << ',' << fmt(l2) << ','
        << fmt(linf) << ',';
    if (have_prev && l2 > 0)
      out << fmt(std::log2(prev_l2 / l2));
    out << '\n';
    prev_l2 = l2;
    have_prev = true;
  }
  std::cout << "wrote " << out_path << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic surface PDE toolkit (tangential lifting operators)"};
  // recipes are flat key=value files under a [solve.heat] or [solve.turing]
  // section; command-line flags override file values
  app.set_config("--config", "", "recipe/configuration file");
  app.require_subcommand(1);

  // ---- mesh -----------------------------------------------------------
  auto* mesh_cmd = app.add_subcommand("mesh", "generate/inspect/convert meshes");
  mesh_cmd->require_subcommand(1);

  auto* gen_cmd = mesh_cmd->add_subcommand("gen", "generate a builtin mesh");
  gen_cmd->require_subcommand(1);
  int subdiv = 3;
  std::string gen_out;
  auto* gen_sphere = gen_cmd->add_subcommand("sphere", "icosphere");
  gen_sphere->add_option("--subdiv", subdiv, "subdivision level");
  gen_sphere->add_option("-o,--out", gen_out, "output mesh file")->required();
  double torus_a = 2, torus_r = 1;
  int torus_nu = 25, torus_nv = 49;
  auto* gen_torus_cmd = gen_cmd->add_subcommand("torus", "parametric torus");
  gen_torus_cmd->add_option("--a", torus_a, "major radius");
  gen_torus_cmd->add_option("--r", torus_r, "minor radius");
  gen_torus_cmd->add_option("--nu", torus_nu, "minor-angle samples");
  gen_torus_cmd->add_option("--nv", torus_nv, "major-angle samples");
  gen_torus_cmd->add_option("-o,--out", gen_out, "output mesh file")
      ->required();

  std::string info_path;
  auto* info_cmd = mesh_cmd->add_subcommand("info", "print mesh diagnostics");
  info_cmd->add_option("mesh", info_path, "mesh file")->required();

  std::string conv_in, conv_out;
  auto* convert_cmd = mesh_cmd->add_subcommand("convert", "convert formats");
  convert_cmd->add_option("input", conv_in)->required();
  convert_cmd->add_option("output", conv_out)->required();

  // ---- ops ------------------------------------------------------------
  auto* ops_cmd = app.add_subcommand("ops", "apply a discrete operator");
  ops_cmd->require_subcommand(1);
  MeshSource ops_src;
  std::string ops_field = "x1", ops_out = "field_out.ply";
  for (const char* name : {"grad", "laplacian"}) {
    auto* sub = ops_cmd->add_subcommand(name);
    sub->add_option("mesh", ops_src.path, "mesh file");
    sub->add_option("--gen", ops_src.gen, "generator spec");
    sub->add_option("--field", ops_field, "field expression")->required();
    sub->add_option("-o,--out", ops_out, "output file (.ply or .csv)");
  }

  // ---- solve ----------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "time-integrate a PDE");
  solve_cmd->require_subcommand(1);

  HeatCli heat;
  auto* heat_cmd = solve_cmd->add_subcommand("heat", "linear diffusion");
  heat_cmd->add_option("--mesh", heat.common.src.path, "mesh file");
  heat_cmd->add_option("--gen", heat.common.src.gen, "generator spec");
  heat_cmd->add_option("--g", heat.g_expr, "source expression");
  heat_cmd->add_option("--u0", heat.u0_expr, "initial condition");
  heat_cmd->add_option("--dt", heat.common.dt_str, "time step or 'auto'");
  heat_cmd->add_option("--max-steps", heat.common.max_steps);
  heat_cmd->add_option("--steady-tol", heat.common.steady_tol);
  heat_cmd->add_option("-o,--out", heat.common.out_dir, "output directory")
      ->required();
  heat_cmd->add_option("--format", heat.common.format, "ply or csv");
  heat_cmd->add_flag("--verify", heat.common.verify,
                     "re-run and compare output bytes");

  TuringCli turing;
  auto* turing_cmd = solve_cmd->add_subcommand("turing", "reaction-diffusion");
  turing_cmd->add_option("--mesh", turing.common.src.path, "mesh file");
  turing_cmd->add_option("--gen", turing.common.src.gen, "generator spec");
  turing_cmd->add_option("--alpha", turing.alpha, "diffusion rate of u1");
  turing_cmd->add_option("--beta", turing.beta, "diffusion rate of u2");
  turing_cmd->add_option("--s", turing.s, "reaction scale");
  turing_cmd->add_option("--gamma-amp", turing.gamma_amp,
                         "irregularity amplitude");
  turing_cmd->add_option("--seed", turing.seed, "RNG seed");
  turing_cmd->add_option("--u10", turing.u10_expr, "initial u1");
  turing_cmd->add_option("--u20", turing.u20_expr, "initial u2");
  turing_cmd->add_option("--dt", turing.common.dt_str, "time step or 'auto'");
  turing_cmd->add_option("--max-steps", turing.common.max_steps);
  turing_cmd->add_option("--steady-tol", turing.common.steady_tol);
  turing_cmd->add_option("-o,--out", turing.common.out_dir, "output directory")
      ->required();
  turing_cmd->add_option("--format", turing.common.format, "ply or csv");
  turing_cmd->add_flag("--verify", turing.common.verify,
                       "re-run and compare output bytes");

  // ---- convergence ----------------------------------------------------
  auto* conv_cmd =
      app.add_subcommand("convergence", "oracle convergence report");
  std::string family = "sphere", conv_field = "x1", conv_op = "laplacian";
  std::string conv_report = "convergence.csv";
  std::vector<int> levels = {2, 3, 4};
  conv_cmd->add_option("--family", family, "sphere or torus")
      ->check(CLI::IsMember({"sphere", "torus"}));
  conv_cmd->add_option("--levels", levels, "refinement levels");
  conv_cmd->add_option("--field", conv_field, "field expression");
  conv_cmd->add_option("--op", conv_op, "laplacian or grad")
      ->check(CLI::IsMember({"laplacian", "grad"}));
  conv_cmd->add_option("-o,--out", conv_report, "CSV report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_sphere->parsed() || gen_torus_cmd->parsed()) {
      const TriangleMesh m = gen_sphere->parsed()
                                 ? gen_icosphere(subdiv)
                                 : gen_torus(torus_a, torus_r, torus_nu,
                                             torus_nv);
      save_mesh(m, gen_out);
      std::cout << "wrote " << gen_out << " (" << m.n_vertices()
                << " vertices, " << m.n_faces() << " faces)\n";
      return kOk;
    }
    if (info_cmd->parsed()) {
      const TriangleMesh m = load_mesh(info_path);
      const MeshDiagnostics d = validate(m);
      std::cout << "vertices: " << m.n_vertices() << '\n'
                << "faces: " << m.n_faces() << '\n'
                << "edges: " << d.edge_count << '\n'
                << "euler_characteristic: "
                << (m.n_vertices() - d.edge_count + m.n_faces()) << '\n'
                << "boundary_edges: " << d.boundary_edge_count << '\n'
                << "nonmanifold_edges: " << d.nonmanifold_edge_count << '\n'
                << "degenerate_faces: " << d.degenerate_face_count << '\n'
                << "orientation_conflicts: " << d.orientation_conflict_count
                << '\n'
                << "min_face_area: " << fmt(d.min_face_area) << '\n'
                << "max_face_area: " << fmt(d.max_face_area) << '\n'
                << "min_edge_length: " << fmt(d.min_edge_length) << '\n'
                << "solver_ready: " << (d.solver_ready() ? "yes" : "no")
                << '\n';
      return kOk;
    }
    if (convert_cmd->parsed()) {
      save_mesh(load_mesh(conv_in), conv_out);
      std::cout << "wrote " << conv_out << '\n';
      return kOk;
    }
    if (ops_cmd->parsed()) {
      const std::string which =
          ops_cmd->get_subcommands().front()->get_name();
      return run_ops_cmd(which, ops_src, ops_field, ops_out);
    }
    if (heat_cmd->parsed()) return run_heat_cmd(heat);
    if (turing_cmd->parsed()) return run_turing_cmd(turing);
    if (conv_cmd->parsed())
      return run_convergence_cmd(family, levels, conv_field, conv_op,
                                 conv_report);
  } catch (const BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBlowUp;
  } catch (const OperatorError& e) {
    std::cerr << "error: " << e.what();
    if (e.vertex >= 0) std::cerr << " (vertex " << e.vertex << ")";
    std::cerr << '\n';
    return kOperatorError;
  } catch (const ExprParseError& e) {
    std::cerr << "error: " << e.what() << " (expected: " << e.expected
              << ")\n";
    return kConfigError;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
