#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "ltl/field_expr.hpp"
#include "ltl/mesh.hpp"

namespace ltl {

// First fundamental form coefficients and the analytic partials the
// divergence-form Laplace-Beltrami expression needs.
struct FundamentalForm {
  double E = 0, F = 0, G = 0;
  double E_u = 0, E_v = 0, F_u = 0, F_v = 0, G_u = 0, G_v = 0;

  double W() const { return E * G - F * F; }
  double W_u() const { return E_u * G + E * G_u - 2 * F * F_u; }
  double W_v() const { return E_v * G + E * G_v - 2 * F * F_v; }
};

// A surface given by three embedding expressions in (u, v). All partials
// used downstream are symbolic derivatives of those expressions.
class ParametricSurface {
public:
  ParametricSurface(std::array<FieldExpr, 3> embedding, double u_min,
                    double u_max, double v_min, double v_max);

  Vec3 position(double u, double v) const;
  Vec3 du(double u, double v) const;
  Vec3 dv(double u, double v) const;
  Vec3 normal(double u, double v) const;  // x_u x x_v, unnormalized

  const std::array<FieldExpr, 3>& embedding() const { return embedding_; }
  double u_min() const { return u_min_; }
  double u_max() const { return u_max_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }

private:
  std::array<FieldExpr, 3> embedding_, du_, dv_, duu_, duv_, dvv_;
  double u_min_, u_max_, v_min_, v_max_;

  friend FundamentalForm fundamental_form(const ParametricSurface&, double,
                                          double);
};

// Chart: u = colatitude in (0, pi), v = longitude. E=1, F=0, G=sin^2 u.
ParametricSurface make_unit_sphere();
// The adopted embedding ((a+r cos u)cos v, (a+r cos u)sin v, r sin u).
ParametricSurface make_torus(double a, double r);

// Throws RegularityError when EG - F^2 degenerates at (u, v).
FundamentalForm fundamental_form(const ParametricSurface& surface, double u,
                                 double v);

// A scalar function on the parameter domain with the partials the oracle
// formulas consume.
struct SurfaceFunction {
  std::function<double(double, double)> value, du, dv, duu, duv, dvv;
};

// Exact partials by symbolic differentiation. Ambient variables x1,x2,x3
// are first substituted with the surface's embedding expressions.
SurfaceFunction make_surface_function(const FieldExpr& expr,
                                      const ParametricSurface& surface);
// Central finite differences, step 1e-5, for black-box callables.
SurfaceFunction make_surface_function(std::function<double(double, double)> f,
                                      double step = 1e-5);

// Eq.-style intrinsic gradient: ((g_u G - g_v F) x_u + (g_v E - g_u F) x_v)
// / (EG - F^2). Tangent to the surface.
Vec3 surface_gradient(const ParametricSurface& surface,
                      const SurfaceFunction& g, double u, double v);

// Divergence-form Laplace-Beltrami operator.
double surface_laplacian(const ParametricSurface& surface,
                         const SurfaceFunction& g, double u, double v);

}  // namespace ltl
