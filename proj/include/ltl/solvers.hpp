#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ltl/mesh.hpp"
#include "ltl/operators.hpp"

namespace ltl {

enum class Termination { steady, profile_steady, max_steps, blow_up };

const char* to_string(Termination reason);

struct SolveTrace {
  std::vector<int> snapshot_steps;
  std::vector<std::map<std::string, VertexScalarField>> snapshots;
  std::vector<double> max_update;      // per executed step, max |du|/dt
  std::vector<double> profile_update;  // heat only: mean-removed metric
  Termination reason = Termination::max_steps;
  int steps_executed = 0;
};

struct HeatProblem {
  const TriangleMesh* mesh = nullptr;
  VertexScalarField source;   // g, time-independent
  VertexScalarField initial;  // u0
  double dt = 0.0;
  int max_steps = 0;
  double steady_tol = 1e-6;
};

struct TuringParams {
  double alpha = 1.0;  // diffusion of u1
  double beta = 2.0;   // diffusion of u2
  double s = 2.0;      // reaction scale
};

struct TuringProblem {
  const TriangleMesh* mesh = nullptr;
  TuringParams params;
  double gamma_amplitude = 0.0;
  std::uint64_t seed = 0;
  VertexScalarField u1_initial, u2_initial;
  double dt = 0.0;
  int max_steps = 0;
  double steady_tol = 1e-6;
};

// Forward Euler: u' = u + dt (laplacian(u) + g). Throws BlowUpError when
// the result is non-finite.
VertexScalarField step_heat(const LtlContext& ctx, const VertexScalarField& u,
                            const VertexScalarField& g, double dt);

SolveTrace run_heat(const HeatProblem& problem);

// Advisory explicit-Euler step suggestion c * h_min^2.
double stability_dt(const TriangleMesh& mesh, double safety = 0.2);

// Frozen per-vertex irregularity field: i.i.d. uniform on
// [-amplitude, amplitude] drawn sequentially from std::mt19937_64(seed).
VertexScalarField sample_gamma(int n_vertices, double amplitude,
                               std::uint64_t seed);

// Jacobi update of Turing's system:
//   u1' = u1 + dt (s (16 - u1 u2)        + alpha lap u1)
//   u2' = u2 + dt (s (u1 u2 - u2 - gamma) + beta  lap u2)
void step_turing(const LtlContext& ctx, const TuringParams& params,
                 const VertexScalarField& gamma, double dt,
                 VertexScalarField& u1, VertexScalarField& u2);

SolveTrace run_turing(const TuringProblem& problem);

}  // namespace ltl
