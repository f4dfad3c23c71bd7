#include "ltl/solvers.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <random>

#include "ltl/errors.hpp"

namespace ltl {

const char* to_string(Termination reason) {
  switch (reason) {
    case Termination::steady: return "steady";
    case Termination::profile_steady: return "profile_steady";
    case Termination::max_steps: return "max_steps";
    case Termination::blow_up: return "blow_up";
  }
  return "?";
}

namespace {

bool is_snapshot_step(int step) {
  if (step <= 2) return true;
  return (step & (step - 1)) == 0;  // powers of two
}

void check_problem(const TriangleMesh* mesh, double dt, double steady_tol,
                   std::initializer_list<const VertexScalarField*> fields) {
  if (!mesh) throw Error("solver problem has no mesh");
  if (!(dt > 0)) throw Error("dt must be positive");
  if (!(steady_tol > 0)) throw Error("steady_tol must be positive");
  for (const VertexScalarField* f : fields) {
    if (f->size() != mesh->n_vertices())
      throw Error("field length does not match vertex count");
    if (!f->allFinite()) throw Error("field contains non-finite values");
  }
}

}  // namespace

VertexScalarField step_heat(const LtlContext& ctx, const VertexScalarField& u,
                            const VertexScalarField& g, double dt) {
  const VertexScalarField lap = ctx.laplacian(u);
  VertexScalarField next = u + dt * (lap + g);
  if (!next.allFinite())
    throw BlowUpError("heat step produced a non-finite field", -1,
                      lap.cwiseAbs().maxCoeff());
  return next;
}

SolveTrace run_heat(const HeatProblem& p) {
  check_problem(p.mesh, p.dt, p.steady_tol, {&p.source, &p.initial});
  const LtlContext ctx(*p.mesh);

  SolveTrace trace;
  VertexScalarField u = p.initial;
  auto snapshot = [&](int step) {
    trace.snapshot_steps.push_back(step);
    trace.snapshots.push_back({{"u", u}});
  };
  snapshot(0);

  trace.reason = Termination::max_steps;
  for (int step = 1; step <= p.max_steps; ++step) {
    const VertexScalarField lap = ctx.laplacian(u);
    const VertexScalarField next = u + p.dt * (lap + p.source);
    if (!next.allFinite()) {
      trace.reason = Termination::blow_up;
      // keep the last finite state as the final snapshot
      if (trace.snapshot_steps.back() != step - 1) snapshot(step - 1);
      trace.max_update.push_back(std::numeric_limits<double>::infinity());
      trace.steps_executed = step;
      return trace;
    }
    const double du = (next - u).cwiseAbs().maxCoeff() / p.dt;
    const double dp =
        ((next.array() - next.mean()) - (u.array() - u.mean()))
            .abs()
            .maxCoeff() /
        p.dt;
    trace.max_update.push_back(du);
    trace.profile_update.push_back(dp);
    u = next;
    trace.steps_executed = step;
    if (du < p.steady_tol) {
      trace.reason = Termination::steady;
      if (trace.snapshot_steps.back() != step) snapshot(step);
      return trace;
    }
    if (dp < p.steady_tol) {
      trace.reason = Termination::profile_steady;
      if (trace.snapshot_steps.back() != step) snapshot(step);
      return trace;
    }
    if (is_snapshot_step(step)) snapshot(step);
  }
  if (!trace.snapshot_steps.empty() &&
      trace.snapshot_steps.back() != trace.steps_executed)
    snapshot(trace.steps_executed);
  return trace;
}

double stability_dt(const TriangleMesh& mesh, double safety) {
  const MeshDiagnostics d = validate(mesh);
  if (!(d.min_edge_length > 0))
    throw Error("mesh has a zero-length edge; no stable dt exists");
  return safety * d.min_edge_length * d.min_edge_length;
}

VertexScalarField sample_gamma(int n_vertices, double amplitude,
                               std::uint64_t seed) {
  if (amplitude < 0) throw Error("gamma amplitude must be non-negative");
  VertexScalarField out(n_vertices);
  std::mt19937_64 rng(seed);
  for (int v = 0; v < n_vertices; ++v) {
    // explicit 53-bit mapping, so the stream is fixed by the standard
    const double unit = std::ldexp(static_cast<double>(rng() >> 11), -53);
    out[v] = amplitude * (2.0 * unit - 1.0);
  }
  return out;
}

void step_turing(const LtlContext& ctx, const TuringParams& params,
                 const VertexScalarField& gamma, double dt,
                 VertexScalarField& u1, VertexScalarField& u2) {
  const VertexScalarField lap1 = ctx.laplacian(u1);
  const VertexScalarField lap2 = ctx.laplacian(u2);
  const Eigen::ArrayXd uv = u1.array() * u2.array();
  VertexScalarField next1 =
      u1.array() + dt * (params.s * (16.0 - uv) + params.alpha * lap1.array());
  VertexScalarField next2 =
      u2.array() +
      dt * (params.s * (uv - u2.array() - gamma.array()) +
            params.beta * lap2.array());
  if (!next1.allFinite() || !next2.allFinite())
    throw BlowUpError("turing step produced a non-finite field", -1,
                      std::max(lap1.cwiseAbs().maxCoeff(),
                               lap2.cwiseAbs().maxCoeff()));
  u1 = std::move(next1);
  u2 = std::move(next2);
}

SolveTrace run_turing(const TuringProblem& p) {
  check_problem(p.mesh, p.dt, p.steady_tol, {&p.u1_initial, &p.u2_initial});
  if (!(p.params.alpha >= 0 && p.params.beta >= 0))
    throw Error("diffusion rates must be non-negative");
  const LtlContext ctx(*p.mesh);
  const VertexScalarField gamma =
      sample_gamma(p.mesh->n_vertices(), p.gamma_amplitude, p.seed);

  SolveTrace trace;
  VertexScalarField u1 = p.u1_initial;
  VertexScalarField u2 = p.u2_initial;
  auto snapshot = [&](int step) {
    trace.snapshot_steps.push_back(step);
    trace.snapshots.push_back({{"u1", u1}, {"u2", u2}});
  };
  snapshot(0);

  trace.reason = Termination::max_steps;
  for (int step = 1; step <= p.max_steps; ++step) {
    VertexScalarField prev1 = u1, prev2 = u2;
    try {
      step_turing(ctx, p.params, gamma, p.dt, u1, u2);
    } catch (const BlowUpError&) {
      u1 = std::move(prev1);
      u2 = std::move(prev2);
      trace.reason = Termination::blow_up;
      if (trace.snapshot_steps.back() != step - 1) snapshot(step - 1);
      trace.max_update.push_back(std::numeric_limits<double>::infinity());
      trace.steps_executed = step;
      return trace;
    }
    const double du = std::max((u1 - prev1).cwiseAbs().maxCoeff(),
                               (u2 - prev2).cwiseAbs().maxCoeff()) /
                      p.dt;
    trace.max_update.push_back(du);
    trace.steps_executed = step;
    if (du < p.steady_tol) {
      trace.reason = Termination::steady;
      if (trace.snapshot_steps.back() != step) snapshot(step);
      return trace;
    }
    if (is_snapshot_step(step)) snapshot(step);
  }
  if (!trace.snapshot_steps.empty() &&
      trace.snapshot_steps.back() != trace.steps_executed)
    snapshot(trace.steps_executed);
  return trace;
}

}  // namespace ltl
