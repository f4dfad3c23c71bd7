#include "ltl/oracle.hpp"

#include <cmath>
#include <cstdio>

#include "ltl/errors.hpp"

namespace ltl {

namespace {

constexpr double kRegularityEps = 1e-12;

FieldExpr diff_all(const std::array<FieldExpr, 3>& e, FieldVar var, int k) {
  return differentiate(e[k], var);
}

double eval_param(const FieldExpr& e, double u, double v) {
  return evaluate(e, Bindings::parametric(u, v));
}

Vec3 eval3(const std::array<FieldExpr, 3>& e, double u, double v) {
  return Vec3(eval_param(e[0], u, v), eval_param(e[1], u, v),
              eval_param(e[2], u, v));
}

std::string fmt_literal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ParametricSurface::ParametricSurface(std::array<FieldExpr, 3> embedding,
                                     double u_min, double u_max, double v_min,
                                     double v_max)
    : embedding_(std::move(embedding)),
      u_min_(u_min),
      u_max_(u_max),
      v_min_(v_min),
      v_max_(v_max) {
  for (int k = 0; k < 3; ++k) {
    du_[k] = diff_all(embedding_, FieldVar::u, k);
    dv_[k] = diff_all(embedding_, FieldVar::v, k);
    duu_[k] = differentiate(du_[k], FieldVar::u);
    duv_[k] = differentiate(du_[k], FieldVar::v);
    dvv_[k] = differentiate(dv_[k], FieldVar::v);
  }
}

Vec3 ParametricSurface::position(double u, double v) const {
  return eval3(embedding_, u, v);
}
Vec3 ParametricSurface::du(double u, double v) const {
  return eval3(du_, u, v);
}
Vec3 ParametricSurface::dv(double u, double v) const {
  return eval3(dv_, u, v);
}
Vec3 ParametricSurface::normal(double u, double v) const {
  return du(u, v).cross(dv(u, v));
}

ParametricSurface make_unit_sphere() {
  return ParametricSurface(
      {parse_field("sin(u)*cos(v)"), parse_field("sin(u)*sin(v)"),
       parse_field("cos(u)")},
      0.0, M_PI, 0.0, 2.0 * M_PI);
}

ParametricSurface make_torus(double a, double r) {
  if (!(a > r && r > 0))
    throw GeometryError("torus requires a > r > 0 (self-intersection)");
  const std::string A = fmt_literal(a), R = fmt_literal(r);
  return ParametricSurface(
      {parse_field("(" + A + "+" + R + "*cos(u))*cos(v)"),
       parse_field("(" + A + "+" + R + "*cos(u))*sin(v)"),
       parse_field(R + "*sin(u)")},
      0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI);
}

FundamentalForm fundamental_form(const ParametricSurface& s, double u,
                                 double v) {
  const Vec3 xu = eval3(s.du_, u, v);
  const Vec3 xv = eval3(s.dv_, u, v);
  const Vec3 xuu = eval3(s.duu_, u, v);
  const Vec3 xuv = eval3(s.duv_, u, v);
  const Vec3 xvv = eval3(s.dvv_, u, v);

  FundamentalForm f;
  f.E = xu.dot(xu);
  f.F = xu.dot(xv);
  f.G = xv.dot(xv);
  f.E_u = 2 * xuu.dot(xu);
  f.E_v = 2 * xuv.dot(xu);
  f.F_u = xuu.dot(xv) + xu.dot(xuv);
  f.F_v = xuv.dot(xv) + xu.dot(xvv);
  f.G_u = 2 * xuv.dot(xv);
  f.G_v = 2 * xvv.dot(xv);

  if (f.W() <= kRegularityEps * std::max(1.0, f.E * f.G))
    throw RegularityError("parametrization degenerates at (u, v) = (" +
                          std::to_string(u) + ", " + std::to_string(v) + ")");
  return f;
}

SurfaceFunction make_surface_function(const FieldExpr& expr,
                                      const ParametricSurface& surface) {
  // Compose ambient variables through the embedding, then differentiate
  // symbolically.
  std::map<FieldVar, FieldExpr> repl = {
      {FieldVar::x1, surface.embedding()[0]},
      {FieldVar::x2, surface.embedding()[1]},
      {FieldVar::x3, surface.embedding()[2]}};
  const FieldExpr g = substitute(expr, repl);
  const FieldExpr gu = differentiate(g, FieldVar::u);
  const FieldExpr gv = differentiate(g, FieldVar::v);
  const FieldExpr guu = differentiate(gu, FieldVar::u);
  const FieldExpr guv = differentiate(gu, FieldVar::v);
  const FieldExpr gvv = differentiate(gv, FieldVar::v);

  auto bind = [](FieldExpr e) {
    return [e = std::move(e)](double u, double v) {
      return eval_param(e, u, v);
    };
  };
  return SurfaceFunction{bind(g), bind(gu), bind(gv),
                         bind(guu), bind(guv), bind(gvv)};
}

SurfaceFunction make_surface_function(std::function<double(double, double)> f,
                                      double step) {
  const double h = step;
  auto du = [f, h](double u, double v) {
    return (f(u + h, v) - f(u - h, v)) / (2 * h);
  };
  auto dv = [f, h](double u, double v) {
    return (f(u, v + h) - f(u, v - h)) / (2 * h);
  };
  auto duu = [f, h](double u, double v) {
    return (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
  };
  auto dvv = [f, h](double u, double v) {
    return (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
  };
  auto duv = [f, h](double u, double v) {
    return (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) +
            f(u - h, v - h)) /
           (4 * h * h);
  };
  return SurfaceFunction{f, du, dv, duu, duv, dvv};
}

Vec3 surface_gradient(const ParametricSurface& surface,
                      const SurfaceFunction& g, double u, double v) {
  const FundamentalForm f = fundamental_form(surface, u, v);
  const double gu = g.du(u, v);
  const double gv = g.dv(u, v);
  const double W = f.W();
  return (gu * f.G - gv * f.F) / W * surface.du(u, v) +
         (gv * f.E - gu * f.F) / W * surface.dv(u, v);
}

double surface_laplacian(const ParametricSurface& surface,
                         const SurfaceFunction& g, double u, double v) {
  const FundamentalForm f = fundamental_form(surface, u, v);
  const double W = f.W();
  const double s = std::sqrt(W);
  const double s_u = f.W_u() / (2 * s);
  const double s_v = f.W_v() / (2 * s);

  const double gu = g.du(u, v);
  const double gv = g.dv(u, v);
  const double guu = g.duu(u, v);
  const double guv = g.duv(u, v);
  const double gvv = g.dvv(u, v);

  // d/du [(G g_u - F g_v)/s] + d/dv [(E g_v - F g_u)/s], all over s.
  const double Pu = ((f.G_u * gu + f.G * guu - f.F_u * gv - f.F * guv) * s -
                     (f.G * gu - f.F * gv) * s_u) /
                    W;
  const double Qv = ((f.E_v * gv + f.E * gvv - f.F_v * gu - f.F * guv) * s -
                     (f.E * gv - f.F * gu) * s_v) /
                    W;
  return (Pu + Qv) / s;
}

}  // namespace ltl
