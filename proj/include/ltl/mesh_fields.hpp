#pragma once

#include "ltl/field_expr.hpp"
#include "ltl/mesh.hpp"
#include "ltl/operators.hpp"

namespace ltl {

// Evaluates an expression at every vertex, binding x1,x2,x3 to the ambient
// position and u,v to the stored parameters. Throws EvalError at field
// construction when the expression uses u or v on a mesh without stored
// parameters.
VertexScalarField evaluate_on_mesh(const FieldExpr& expr,
                                   const TriangleMesh& mesh);

}  // namespace ltl
