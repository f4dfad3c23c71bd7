#include "ltl/operators.hpp"

#include <cmath>
#include <functional>

#include "ltl/errors.hpp"

namespace ltl {

namespace {

void require_interior(const VertexStar& star, int v) {
  if (v < 0 || v >= static_cast<int>(star.interior.size()))
    throw OperatorError("vertex id out of range", v);
  if (!star.interior[v])
    throw BoundaryVertexError(
        "vertex " + std::to_string(v) +
            " is a boundary vertex; operators require a closed mesh",
        v);
}

Vec3 vertex_normal_impl(const TriangleMesh& mesh, const VertexStar& star,
                        int v, double area_eps) {
  const Vec3& p = mesh.vertices[v];
  Vec3 sum = Vec3::Zero();
  int usable = 0;
  for (int f : star.faces[v]) {
    if (face_area(mesh, f) < area_eps) continue;
    const auto& t = mesh.faces[f];
    const Vec3 centroid =
        (mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
    const double d2 = (centroid - p).squaredNorm();
    if (d2 == 0.0) continue;
    sum += face_normal(mesh, f) / d2;
    ++usable;
  }
  if (usable == 0)
    throw SingularStarError(
        "all faces incident to vertex " + std::to_string(v) +
            " are degenerate",
        v);
  const double norm = sum.norm();
  if (norm == 0.0)
    throw AmbiguousNormalError(
        "weighted face normals cancel at vertex " + std::to_string(v), v);
  return sum / norm;
}

// Both frames seeded by the same edge direction; used by parallel transport.
struct EdgeFrames {
  Vec3 f1, f2;  // at `to`
  Vec3 g1, g2;  // at `from`
};

bool seed_frames(const Vec3& d, const TangentFrame& at_to,
                 const TangentFrame& at_from, double seed_tol,
                 EdgeFrames& out) {
  const double len = d.norm();
  const Vec3 t = d - d.dot(at_to.normal) * at_to.normal;
  const Vec3 s = d - d.dot(at_from.normal) * at_from.normal;
  if (t.norm() < seed_tol * len || s.norm() < seed_tol * len) return false;
  out.f1 = t.normalized();
  out.f2 = at_to.normal.cross(out.f1);
  out.g1 = s.normalized();
  out.g2 = at_from.normal.cross(out.g1);
  return true;
}

EdgeFrames transport_frames(const TriangleMesh& mesh, const VertexStar& star,
                            const FrameField& frames, int from, int to,
                            const Tolerances& tol) {
  const Vec3 d = mesh.vertices[from] - mesh.vertices[to];
  EdgeFrames out;
  if (seed_frames(d, frames[to], frames[from], tol.seed_parallel, out))
    return out;
  // Edge nearly parallel to a normal: seed from the next shared-star
  // neighbor direction instead.
  const auto& nbs = star.neighbors[to];
  const auto& from_nbs = star.neighbors[from];
  int at = -1;
  for (int k = 0; k < static_cast<int>(nbs.size()); ++k)
    if (nbs[k] == from) at = k;
  for (int step = 1; at >= 0 && step < static_cast<int>(nbs.size()); ++step) {
    const int cand = nbs[(at + step) % nbs.size()];
    bool shared = false;
    for (int n : from_nbs) shared |= (n == cand);
    if (!shared) continue;
    const Vec3 e = mesh.vertices[cand] - mesh.vertices[to];
    if (seed_frames(e, frames[to], frames[from], tol.seed_parallel, out))
      return out;
  }
  throw TransportError("no usable transport seed between vertices " +
                           std::to_string(from) + " and " + std::to_string(to),
                       to);
}

}  // namespace

Vec3 vertex_normal(const TriangleMesh& mesh, const VertexStar& star, int v,
                   const Tolerances& tol) {
  require_interior(star, v);
  const double diag = bbox_diagonal(mesh);
  return vertex_normal_impl(mesh, star, v,
                            tol.degenerate_area_rel * diag * diag);
}

FrameField build_frames(const TriangleMesh& mesh, const VertexStar& star,
                        const Tolerances& tol) {
  const double diag = bbox_diagonal(mesh);
  const double area_eps = tol.degenerate_area_rel * diag * diag;

  // Frames are built for boundary vertices too (the normal formula needs
  // only incident faces); the lifting operators still refuse them.
  FrameField frames(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (star.faces[v].empty()) continue;
    TangentFrame& fr = frames[v];
    fr.normal = vertex_normal_impl(mesh, star, v, area_eps);
    bool seeded = false;
    for (int nb : star.neighbors[v]) {
      const Vec3 d = mesh.vertices[nb] - mesh.vertices[v];
      const Vec3 t = d - d.dot(fr.normal) * fr.normal;
      if (t.norm() < tol.seed_parallel * d.norm()) continue;
      fr.e1 = t.normalized();
      seeded = true;
      break;
    }
    if (!seeded)
      throw SingularStarError("every star edge at vertex " +
                                  std::to_string(v) +
                                  " is parallel to the vertex normal",
                              v);
    fr.e2 = fr.normal.cross(fr.e1);
  }
  return frames;
}

LiftedPolygon lift_neighborhood(const TriangleMesh& mesh,
                                const VertexStar& star,
                                const FrameField& frames, int v,
                                const Tolerances& tol) {
  require_interior(star, v);
  const TangentFrame& fr = frames[v];
  const Vec3& p = mesh.vertices[v];
  const auto& nbs = star.neighbors[v];
  const int valence = static_cast<int>(nbs.size());

  LiftedPolygon poly;
  poly.lifted.reserve(valence);
  for (int nb : nbs) {
    const Vec3 d = mesh.vertices[nb] - p;
    const Vec3 t = d - d.dot(fr.normal) * fr.normal;
    poly.lifted.emplace_back(t.dot(fr.e1), t.dot(fr.e2));
  }

  poly.faces.reserve(valence);
  double weight_sum = 0.0;
  for (int k = 0; k < valence; ++k) {
    LiftedFace f;
    f.i = k;
    f.j = (k + 1) % valence;
    const Vec2& vi = poly.lifted[f.i];
    const Vec2& vj = poly.lifted[f.j];
    const double gii = vi.squaredNorm();
    const double gjj = vj.squaredNorm();
    const double gij = vi.dot(vj);
    const double det = gii * gjj - gij * gij;
    const double centroid2 = ((vi + vj) / 3.0).squaredNorm();
    f.degenerate = det <= tol.gram_rel * gii * gjj || centroid2 == 0.0;
    f.weight = f.degenerate ? 0.0 : 1.0 / centroid2;
    if (!f.degenerate) {
      weight_sum += f.weight;
      ++poly.usable_faces;
    }
    poly.faces.push_back(f);
  }
  if (weight_sum > 0.0)
    for (LiftedFace& f : poly.faces) f.weight /= weight_sum;
  return poly;
}

Vec2 face_gradient(const Vec2& vi, const Vec2& vj, double dh_i, double dh_j,
                   const Tolerances& tol) {
  const double gii = vi.squaredNorm();
  const double gjj = vj.squaredNorm();
  const double gij = vi.dot(vj);
  const double det = gii * gjj - gij * gij;
  if (det <= tol.gram_rel * gii * gjj)
    throw DegenerateFaceError("lifted face has a degenerate Gram system");
  const double alpha = (gjj * dh_i - gij * dh_j) / det;
  const double beta = (gii * dh_j - gij * dh_i) / det;
  return alpha * vi + beta * vj;
}

namespace {

Vec2 polygon_gradient(const LiftedPolygon& poly,
                      const std::vector<double>& neighbor_values,
                      double center_value, int v, const Tolerances& tol) {
  if (poly.usable_faces == 0)
    throw SingularStarError(
        "no usable lifted face at vertex " + std::to_string(v), v);
  Vec2 sum = Vec2::Zero();
  for (const LiftedFace& f : poly.faces) {
    if (f.degenerate) continue;
    sum += f.weight * face_gradient(poly.lifted[f.i], poly.lifted[f.j],
                                    neighbor_values[f.i] - center_value,
                                    neighbor_values[f.j] - center_value, tol);
  }
  return sum;
}

}  // namespace

TangentVector vertex_gradient(const TriangleMesh& mesh, const VertexStar& star,
                              const FrameField& frames,
                              const VertexScalarField& h, int v,
                              const Tolerances& tol) {
  const LiftedPolygon poly = lift_neighborhood(mesh, star, frames, v, tol);
  const auto& nbs = star.neighbors[v];
  std::vector<double> values(nbs.size());
  for (size_t k = 0; k < nbs.size(); ++k) values[k] = h[nbs[k]];
  const Vec2 g2 = polygon_gradient(poly, values, h[v], v, tol);
  return TangentVector{g2, g2.x() * frames[v].e1 + g2.y() * frames[v].e2};
}

Vec3 parallel_transport(const TriangleMesh& mesh, const VertexStar& star,
                        const FrameField& frames, int from, int to,
                        const Vec3& w, const Tolerances& tol) {
  const EdgeFrames ef = transport_frames(mesh, star, frames, from, to, tol);
  return w.dot(ef.g1) * ef.f1 + w.dot(ef.g2) * ef.f2;
}

namespace {

// Shared by the per-vertex laplacian and laplacian_field; `grad_of` must
// return the ambient gradient at any vertex in the closed star of v.
double laplacian_at(const TriangleMesh& mesh, const VertexStar& star,
                    const FrameField& frames, int v,
                    const std::function<Vec3(int)>& grad_of,
                    const Tolerances& tol) {
  const LiftedPolygon poly = lift_neighborhood(mesh, star, frames, v, tol);
  const auto& nbs = star.neighbors[v];
  const TangentFrame& fr = frames[v];

  const Vec3 g0 = grad_of(v);
  const double a0 = g0.dot(fr.e1);
  const double b0 = g0.dot(fr.e2);

  std::vector<double> a(nbs.size()), b(nbs.size());
  for (size_t k = 0; k < nbs.size(); ++k) {
    const Vec3 t =
        parallel_transport(mesh, star, frames, nbs[k], v, grad_of(nbs[k]), tol);
    a[k] = t.dot(fr.e1);
    b[k] = t.dot(fr.e2);
  }
  const Vec2 na = polygon_gradient(poly, a, a0, v, tol);
  const Vec2 nb = polygon_gradient(poly, b, b0, v, tol);
  return na.x() + nb.y();
}

}  // namespace

double laplacian(const TriangleMesh& mesh, const VertexStar& star,
                 const FrameField& frames, const VertexScalarField& h, int v,
                 const Tolerances& tol) {
  auto grad_of = [&](int w) {
    return vertex_gradient(mesh, star, frames, h, w, tol).ambient;
  };
  return laplacian_at(mesh, star, frames, v, grad_of, tol);
}

VertexTangentField gradient_field(const TriangleMesh& mesh,
                                  const VertexStar& star,
                                  const FrameField& frames,
                                  const VertexScalarField& h,
                                  const Tolerances& tol) {
  VertexTangentField out;
  out.coeffs.resize(mesh.n_vertices(), 2);
  out.ambient.resize(mesh.n_vertices(), 3);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const TangentVector g = vertex_gradient(mesh, star, frames, h, v, tol);
    out.coeffs.row(v) = g.coeffs;
    out.ambient.row(v) = g.ambient;
  }
  return out;
}

VertexScalarField laplacian_field(const TriangleMesh& mesh,
                                  const VertexStar& star,
                                  const FrameField& frames,
                                  const VertexScalarField& h,
                                  const Tolerances& tol) {
  const VertexTangentField grads = gradient_field(mesh, star, frames, h, tol);
  auto grad_of = [&](int w) { return Vec3(grads.ambient.row(w)); };
  VertexScalarField out(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    out[v] = laplacian_at(mesh, star, frames, v, grad_of, tol);
  return out;
}

LtlContext::LtlContext(const TriangleMesh& mesh, const Tolerances& tol)
    : mesh_(&mesh), star_(build_adjacency(mesh)) {
  for (int v = 0; v < mesh.n_vertices(); ++v) require_interior(star_, v);
  frames_ = build_frames(mesh, star_, tol);

  cache_.resize(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const LiftedPolygon poly = lift_neighborhood(mesh, star_, frames_, v, tol);
    if (poly.usable_faces == 0)
      throw SingularStarError(
          "no usable lifted face at vertex " + std::to_string(v), v);
    CachedVertex& cv = cache_[v];
    for (const LiftedFace& f : poly.faces) {
      if (f.degenerate) continue;
      const Vec2& vi = poly.lifted[f.i];
      const Vec2& vj = poly.lifted[f.j];
      Eigen::Matrix2d gram;
      gram << vi.squaredNorm(), vi.dot(vj), vi.dot(vj), vj.squaredNorm();
      Eigen::Matrix2d basis;
      basis.col(0) = vi;
      basis.col(1) = vj;
      cache_[v].faces.push_back(
          CachedFace{f.i, f.j, f.weight, basis * gram.inverse()});
    }
    const auto& nbs = star_.neighbors[v];
    cv.transport.reserve(nbs.size());
    Eigen::Matrix<double, 3, 2> local;
    local.col(0) = frames_[v].e1;
    local.col(1) = frames_[v].e2;
    for (int nb : nbs) {
      const EdgeFrames ef =
          transport_frames(mesh, star_, frames_, nb, v, tol);
      const Eigen::Matrix3d carry =
          ef.f1 * ef.g1.transpose() + ef.f2 * ef.g2.transpose();
      cv.transport.push_back(local.transpose() * carry);
    }
  }
}

Vec2 LtlContext::gradient2_at(int v, const VertexScalarField& h) const {
  const auto& nbs = star_.neighbors[v];
  Vec2 sum = Vec2::Zero();
  for (const CachedFace& f : cache_[v].faces)
    sum += f.weight *
           (f.grad * Vec2(h[nbs[f.i]] - h[v], h[nbs[f.j]] - h[v]));
  return sum;
}

VertexTangentField LtlContext::gradient(const VertexScalarField& h) const {
  VertexTangentField out;
  const int n = mesh_->n_vertices();
  out.coeffs.resize(n, 2);
  out.ambient.resize(n, 3);
  for (int v = 0; v < n; ++v) {
    const Vec2 g2 = gradient2_at(v, h);
    out.coeffs.row(v) = g2;
    out.ambient.row(v) = g2.x() * frames_[v].e1 + g2.y() * frames_[v].e2;
  }
  return out;
}

VertexScalarField LtlContext::laplacian(const VertexScalarField& h) const {
  const int n = mesh_->n_vertices();
  Eigen::MatrixX2d coeffs(n, 2);
  Eigen::MatrixX3d ambient(n, 3);
  for (int v = 0; v < n; ++v) {
    const Vec2 g2 = gradient2_at(v, h);
    coeffs.row(v) = g2;
    ambient.row(v) = g2.x() * frames_[v].e1 + g2.y() * frames_[v].e2;
  }

  VertexScalarField out(n);
  for (int v = 0; v < n; ++v) {
    const CachedVertex& cv = cache_[v];
    const auto& nbs = star_.neighbors[v];
    const double a0 = coeffs(v, 0);
    const double b0 = coeffs(v, 1);
    std::vector<Vec2> ab(nbs.size());
    for (size_t k = 0; k < nbs.size(); ++k)
      ab[k] = cv.transport[k] * Vec3(ambient.row(nbs[k]));
    Vec2 na = Vec2::Zero(), nb = Vec2::Zero();
    for (const CachedFace& f : cv.faces) {
      na += f.weight * (f.grad * Vec2(ab[f.i].x() - a0, ab[f.j].x() - a0));
      nb += f.weight * (f.grad * Vec2(ab[f.i].y() - b0, ab[f.j].y() - b0));
    }
    out[v] = na.x() + nb.y();
  }
  return out;
}

}  // namespace ltl
