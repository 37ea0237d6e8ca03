#pragma once

#include <algorithm>
#include <limits>

#include "trismooth/mesh.hpp"

namespace trismooth {

class ThreadPool;

/// Normalized triangle shape quality: 4√3·A_signed / Σ lᵢ².  1 for
/// equilateral, 0 for degenerate, negative for clockwise (inverted)
/// triangles. Scale-, rotation-, and translation-invariant.
inline double triangle_alpha(Point p1, Point p2, Point p3) {
  const double ax = p2.x - p1.x, ay = p2.y - p1.y;
  const double bx = p3.x - p1.x, by = p3.y - p1.y;
  const double cx = p3.x - p2.x, cy = p3.y - p2.y;
  const double twice_area = ax * by - ay * bx;
  const double edge_sq = ax * ax + ay * ay + bx * bx + by * by + cx * cx + cy * cy;
  if (edge_sq == 0.0) return 0.0;  // all points coincident: degenerate, not an error
  return 2.0 * 1.7320508075688772935 * twice_area / edge_sq;  // 4√3·A = 2√3·(2A)
}

namespace detail {

/// Coordinate views letting the same kernels read live, snapshotted, or
/// mixed (chunk-local live, elsewhere snapshot) positions.
template <class Storage>
struct LiveView {
  const Storage& m;
  Point pos(int v) const { return m.position(v); }
};

template <class Buffer>
struct SnapshotView {
  const Buffer& buf;
  Point pos(int v) const { return buf.get(v); }
};

template <class Storage>
struct ChunkView {
  const Storage& m;
  const typename Storage::CoordBuffer& snapshot;
  int begin;
  int end;
  Point pos(int v) const {
    return v >= begin && v < end ? m.position(v) : snapshot.get(v);
  }
};

/// Min α over v's incident triangles with v evaluated at `candidate` and
/// every other vertex read through `view`. Pure: no field writes.
template <class Storage, class View>
double min_alpha_at(const Storage& m, const View& view, int v, Point candidate) {
  double best = std::numeric_limits<double>::infinity();
  for (int t : m.incident(v)) {
    const auto tv = m.tri(t);
    Point p[3];
    for (int k = 0; k < 3; ++k) p[k] = tv[k] == v ? candidate : view.pos(tv[k]);
    best = std::min(best, triangle_alpha(p[0], p[1], p[2]));
  }
  return best;
}

/// Phase 1 of the bulk update: recompute α of triangles [begin, end) from
/// live coordinates, each exactly once.
template <class Storage>
void refresh_tri_alphas(Storage& m, int begin, int end) {
  for (int t = begin; t < end; ++t) {
    const auto tv = m.tri(t);
    m.set_tri_quality(t, triangle_alpha(m.position(tv[0]), m.position(tv[1]), m.position(tv[2])));
  }
}

/// Phase 2: per-vertex min over incident triangle α for vertices
/// [begin, end). Vertices without incident triangles keep the unset mark.
template <class Storage>
void reduce_vertex_minima(Storage& m, int begin, int end) {
  for (int v = begin; v < end; ++v) {
    if (m.incident_count(v) == 0) {
      m.set_vertex_min_quality(v, kUnsetQuality);
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (int t : m.incident(v)) best = std::min(best, m.tri_quality(t));
    m.set_vertex_min_quality(v, best);
  }
}

}  // namespace detail

/// Sets α for every triangle from current coordinates. One independent write
/// per triangle; a pool, if given, splits the range into contiguous chunks.
void compute_all_qualities(Mesh& mesh, ThreadPool* pool = nullptr);

/// Min stored α over v's incident triangles. Requires topology and a quality
/// pass; throws Error for a vertex with no incident triangles.
double min_incident_quality(const Mesh& mesh, int v);

/// Hypothetical min incident α with v moved to `candidate`, every other
/// vertex at its current position. Recomputes each incident triangle on the
/// spot; the mesh is not modified.
double update_fused(const Mesh& mesh, int v, Point candidate);

/// Bulk synchronization: per-triangle α recomputed exactly once, then
/// per-vertex minima reduced. Barrier between the phases when pooled.
void update_two_phase(Mesh& mesh, ThreadPool* pool = nullptr);

/// Phase 2 alone: per-vertex minima from already-current triangle α.
void reduce_vertex_minima(Mesh& mesh, ThreadPool* pool = nullptr);

}  // namespace trismooth
