#pragma once

// Shared fixtures and independent oracles. Oracles recompute expectations
// from first principles (triangle lists and coordinates only) rather than
// through the code paths under test.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "trismooth/mesh.hpp"
#include "trismooth/meshgen.hpp"
#include "trismooth/quality.hpp"
#include "trismooth/smoothing.hpp"

namespace testutil {

using trismooth::Mesh;
using trismooth::MeshSource;
using trismooth::Point;

inline std::vector<Point> coords_of(const Mesh& mesh) {
  std::vector<Point> out(mesh.vertex_count());
  mesh.visit([&](const auto& m) {
    for (int v = 0; v < m.vertex_count(); ++v) out[v] = m.position(v);
  });
  return out;
}

inline std::vector<std::array<int, 3>> triangles_of(const Mesh& mesh) {
  std::vector<std::array<int, 3>> out(mesh.triangle_count());
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < m.triangle_count(); ++t) out[t] = m.tri(t);
  });
  return out;
}

inline std::vector<bool> boundary_flags_of(const Mesh& mesh) {
  std::vector<bool> out(mesh.vertex_count());
  mesh.visit([&](const auto& m) {
    for (int v = 0; v < m.vertex_count(); ++v) out[v] = m.is_boundary(v);
  });
  return out;
}

inline std::vector<double> tri_alphas_of(const Mesh& mesh) {
  std::vector<double> out(mesh.triangle_count());
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < m.triangle_count(); ++t) out[t] = m.tri_quality(t);
  });
  return out;
}

inline Mesh mesh_from(const MeshSource& src, trismooth::Layout layout) {
  return trismooth::build_mesh(src.points, src.triangles, layout);
}

/// Bitwise coordinate equality — stricter than ==, distinguishes ±0.
inline bool same_bits(double a, double b) {
  return std::bit_cast<uint64_t>(a) == std::bit_cast<uint64_t>(b);
}

inline bool coords_bit_identical(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_bits(a[i].x, b[i].x) || !same_bits(a[i].y, b[i].y)) return false;
  return true;
}

/// Raw-occurrence oracle: how often each neighbor is recorded for each
/// vertex, counted straight off the triangle list.
inline std::vector<std::map<int, int>> oracle_raw_counts(
    int nv, const std::vector<std::array<int, 3>>& tris) {
  std::vector<std::map<int, int>> counts(nv);
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      ++counts[t[k]][t[(k + 1) % 3]];
      ++counts[t[k]][t[(k + 2) % 3]];
    }
  }
  return counts;
}

inline std::vector<std::set<int>> oracle_unique_neighbors(
    int nv, const std::vector<std::array<int, 3>>& tris) {
  std::vector<std::set<int>> nb(nv);
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      nb[t[k]].insert(t[(k + 1) % 3]);
      nb[t[k]].insert(t[(k + 2) % 3]);
    }
  }
  return nb;
}

inline std::vector<std::vector<int>> oracle_incident(
    int nv, const std::vector<std::array<int, 3>>& tris) {
  std::vector<std::vector<int>> inc(nv);
  for (size_t t = 0; t < tris.size(); ++t)
    for (int v : tris[t]) inc[v].push_back(static_cast<int>(t));
  return inc;
}

/// Edge-sharing boundary oracle: a vertex is boundary iff it lies on an edge
/// used by exactly one triangle. Vertices referenced by no triangle sit on no
/// edge and come back false (the engine pins them separately).
inline std::vector<bool> oracle_boundary(int nv, const std::vector<std::array<int, 3>>& tris) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++uses[{a, b}];
    }
  }
  std::vector<bool> boundary(nv, false);
  for (const auto& [e, n] : uses) {
    if (n == 1) {
      boundary[e.first] = true;
      boundary[e.second] = true;
    }
  }
  return boundary;
}

/// α from an independent formulation: hypot-based edge lengths and a
/// shoelace area, normalized by 4√3 computed at runtime.
inline double oracle_alpha(Point a, Point b, Point c) {
  const double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
  const double l1 = std::hypot(b.x - a.x, b.y - a.y);
  const double l2 = std::hypot(c.x - b.x, c.y - b.y);
  const double l3 = std::hypot(a.x - c.x, a.y - c.y);
  const double den = l1 * l1 + l2 * l2 + l3 * l3;
  if (den == 0.0) return 0.0;
  return 4.0 * std::sqrt(3.0) * area / den;
}

/// Brute-force Delaunay validity: no point lies inside any triangle's
/// circumcircle by more than `tol` (distances, unit-square domain). The
/// circumcenter comes from the closed-form bisector solution, not the
/// generator's determinant predicate. Returns the number of violations.
inline int oracle_circumcircle_violations(const std::vector<Point>& pts,
                                          const std::vector<std::array<int, 3>>& tris,
                                          double tol) {
  int bad = 0;
  for (const auto& t : tris) {
    const Point a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0.0) {
      ++bad;  // collinear triangle can never be Delaunay
      continue;
    }
    const double a2 = a.x * a.x + a.y * a.y;
    const double b2 = b.x * b.x + b.y * b.y;
    const double c2 = c.x * c.x + c.y * c.y;
    const double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    const double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    const double r = std::hypot(a.x - ux, a.y - uy);
    for (size_t p = 0; p < pts.size(); ++p) {
      if (static_cast<int>(p) == t[0] || static_cast<int>(p) == t[1] ||
          static_cast<int>(p) == t[2])
        continue;
      if (std::hypot(pts[p].x - ux, pts[p].y - uy) < r - tol) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

/// One serial Gauss-Seidel smart pass, reimplemented from the definitions:
/// threshold = pass-start min incident α, candidate = mean of unique
/// neighbors (ascending), accept iff the hypothetical min (evaluated against
/// fully current, possibly already-moved positions) strictly improves.
/// Topology, ordering, and acceptance are independent of the engine; only
/// the α metric itself is shared (it has its own oracle).
inline std::vector<Point> oracle_gauss_seidel_pass(std::vector<Point> pts,
                                                   const std::vector<std::array<int, 3>>& tris) {
  const int nv = static_cast<int>(pts.size());
  std::vector<bool> boundary = oracle_boundary(nv, tris);
  const auto nb = oracle_unique_neighbors(nv, tris);
  const auto inc = oracle_incident(nv, tris);
  for (int v = 0; v < nv; ++v)
    if (inc[v].empty()) boundary[v] = true;

  auto min_incident = [&](int v, Point at) {
    double best = std::numeric_limits<double>::infinity();
    for (int t : inc[v]) {
      Point p[3];
      for (int k = 0; k < 3; ++k) p[k] = tris[t][k] == v ? at : pts[tris[t][k]];
      best = std::min(best, trismooth::triangle_alpha(p[0], p[1], p[2]));
    }
    return best;
  };

  std::vector<double> threshold(nv, 0.0);
  for (int v = 0; v < nv; ++v)
    if (!boundary[v]) threshold[v] = min_incident(v, pts[v]);

  for (int v = 0; v < nv; ++v) {
    if (boundary[v]) continue;
    double sx = 0.0, sy = 0.0;
    for (int u : nb[v]) {  // std::set iterates ascending
      sx += pts[u].x;
      sy += pts[u].y;
    }
    const double inv = 1.0 / static_cast<double>(nb[v].size());
    const Point cand{sx * inv, sy * inv};
    if (min_incident(v, cand) > threshold[v]) pts[v] = cand;
  }
  return pts;
}

/// Fan fixture: vertex 0 at `center`, n rim vertices on the unit circle,
/// triangles (0, k, k+1). With center at the origin and n = 6 all triangles
/// are equilateral.
inline MeshSource fan(int n, Point center) {
  MeshSource src;
  src.points.push_back(center);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * pi * k / n;
    src.points.push_back({std::cos(a), std::sin(a)});
  }
  for (int k = 0; k < n; ++k) src.triangles.push_back({0, 1 + k, 1 + (k + 1) % n});
  return src;
}

inline trismooth::SmoothConfig config(trismooth::IterationForm form,
                                      trismooth::UpdateStrategy strategy,
                                      trismooth::Backend backend, int workers,
                                      int max_iters = 100, double move_tol = 1e-6) {
  trismooth::SmoothConfig cfg;
  cfg.form = form;
  cfg.strategy = strategy;
  cfg.backend = backend;
  cfg.workers = workers;
  cfg.max_iters = max_iters;
  cfg.move_tol = move_tol;
  return cfg;
}

}  // namespace testutil
