#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ltl/mesh.hpp"

namespace ltl {

using VertexScalarField = Eigen::VectorXd;

// Per-vertex orthonormal triple (N, e1, e2) spanning the tangent plane.
struct TangentFrame {
  Vec3 normal, e1, e2;
};
using FrameField = std::vector<TangentFrame>;

// One lifted triangle of the tangential polygon. `i` and `j` index into
// the owning polygon's neighbor list; weight is the normalized inverse
// squared centroid distance, 0 for degenerate faces.
struct LiftedFace {
  int i, j;
  double weight;
  bool degenerate;
};

// The one-ring projected into the tangent plane at a vertex, in (e1, e2)
// coordinates.
struct LiftedPolygon {
  std::vector<Vec2> lifted;
  std::vector<LiftedFace> faces;
  int usable_faces = 0;
};

// Tangent vector at one vertex: coefficients in its frame plus the
// equivalent ambient vector.
struct TangentVector {
  Vec2 coeffs;
  Vec3 ambient;
};

struct VertexTangentField {
  Eigen::MatrixX2d coeffs;
  Eigen::MatrixX3d ambient;
};

// Centroid-weighted average of incident face normals, normalized.
Vec3 vertex_normal(const TriangleMesh& mesh, const VertexStar& star, int v,
                   const Tolerances& tol = Tolerances{});

// e1 is seeded from the first star neighbor (with fallback when that
// direction is nearly parallel to the normal), e2 = N x e1.
FrameField build_frames(const TriangleMesh& mesh, const VertexStar& star,
                        const Tolerances& tol = Tolerances{});

LiftedPolygon lift_neighborhood(const TriangleMesh& mesh,
                                const VertexStar& star,
                                const FrameField& frames, int v,
                                const Tolerances& tol = Tolerances{});

// Solves the 2x2 Gram system; the result satisfies <grad, vi> = dh_i and
// <grad, vj> = dh_j. Throws DegenerateFaceError below the det threshold.
Vec2 face_gradient(const Vec2& vi, const Vec2& vj, double dh_i, double dh_j,
                   const Tolerances& tol = Tolerances{});

TangentVector vertex_gradient(const TriangleMesh& mesh, const VertexStar& star,
                              const FrameField& frames,
                              const VertexScalarField& h, int v,
                              const Tolerances& tol = Tolerances{});

// Carries a tangent vector at `from` into the tangent plane at `to` by
// copying coefficients between edge-seeded orthonormal frames. Norm
// preserving and linear.
Vec3 parallel_transport(const TriangleMesh& mesh, const VertexStar& star,
                        const FrameField& frames, int from, int to,
                        const Vec3& w, const Tolerances& tol = Tolerances{});

double laplacian(const TriangleMesh& mesh, const VertexStar& star,
                 const FrameField& frames, const VertexScalarField& h, int v,
                 const Tolerances& tol = Tolerances{});

VertexTangentField gradient_field(const TriangleMesh& mesh,
                                  const VertexStar& star,
                                  const FrameField& frames,
                                  const VertexScalarField& h,
                                  const Tolerances& tol = Tolerances{});

VertexScalarField laplacian_field(const TriangleMesh& mesh,
                                  const VertexStar& star,
                                  const FrameField& frames,
                                  const VertexScalarField& h,
                                  const Tolerances& tol = Tolerances{});

// Geometry-only precomputation for repeated field applications (the PDE
// solvers apply the same operators thousands of times). Holds the star,
// frames, lifted polygons with cached face-gradient matrices, and the
// per-directed-edge transport maps.
class LtlContext {
public:
  explicit LtlContext(const TriangleMesh& mesh,
                      const Tolerances& tol = Tolerances{});

  const TriangleMesh& mesh() const { return *mesh_; }
  const VertexStar& star() const { return star_; }
  const FrameField& frames() const { return frames_; }

  VertexTangentField gradient(const VertexScalarField& h) const;
  VertexScalarField laplacian(const VertexScalarField& h) const;

private:
  struct CachedFace {
    int i, j;
    double weight;
    Eigen::Matrix2d grad;  // maps (dh_i, dh_j) to the 2D face gradient
  };
  struct CachedVertex {
    std::vector<CachedFace> faces;
    // Row k maps an ambient tangent vector at neighbor k to its (e1, e2)
    // coefficients at this vertex after parallel transport.
    std::vector<Eigen::Matrix<double, 2, 3>> transport;
  };

  const TriangleMesh* mesh_;
  VertexStar star_;
  FrameField frames_;
  std::vector<CachedVertex> cache_;

  Vec2 gradient2_at(int v, const VertexScalarField& h) const;
  Vec2 gradient2_of(int v, const std::vector<double>& values_center,
                    double at_center) const;
};

}  // namespace ltl
