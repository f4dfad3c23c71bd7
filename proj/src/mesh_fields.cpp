#include "ltl/mesh_fields.hpp"

namespace ltl {

VertexScalarField evaluate_on_mesh(const FieldExpr& expr,
                                   const TriangleMesh& mesh) {
  const std::set<FieldVar> used = variables(expr);
  const bool wants_params =
      used.count(FieldVar::u) > 0 || used.count(FieldVar::v) > 0;
  if (wants_params && !mesh.has_params())
    throw EvalError(
        "expression uses parametric variables but the mesh stores no (u, v) "
        "parameters",
        SourceSpan{});

  VertexScalarField out(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    Bindings b = Bindings::ambient(mesh.vertices[i].x(), mesh.vertices[i].y(),
                                   mesh.vertices[i].z());
    if (mesh.has_params()) {
      b.set(FieldVar::u, mesh.params[i].x());
      b.set(FieldVar::v, mesh.params[i].y());
    }
    out[i] = evaluate(expr, b);
  }
  return out;
}

}  // namespace ltl
