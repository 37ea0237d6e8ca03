#include "trismooth/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace trismooth {

std::vector<Point> generate_points(const GenSpec& spec) {
  if (spec.n_points < 3) throw Error("point generation needs n >= 3");
  constexpr double kMinSep = 1e-12;  // L∞ separation below which a draw is resampled

  SplitMix64 rng(spec.seed);
  std::vector<Point> pts;
  pts.reserve(spec.n_points);

  // Hash grid with kMinSep-sized cells; only the 3×3 neighborhood can hold a
  // too-close point. Bucket collisions just add candidates to compare.
  std::unordered_map<uint64_t, std::vector<int>> grid;
  auto cell = [](double x) { return static_cast<int64_t>(std::floor(x / kMinSep)); };
  auto key = [](int64_t ix, int64_t iy) {
    return static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ULL ^
           static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4FULL;
  };

  while (static_cast<int>(pts.size()) < spec.n_points) {
    const Point p{rng.uniform01(), rng.uniform01()};
    const int64_t ix = cell(p.x), iy = cell(p.y);
    bool close = false;
    for (int64_t dx = -1; dx <= 1 && !close; ++dx) {
      for (int64_t dy = -1; dy <= 1 && !close; ++dy) {
        const auto it = grid.find(key(ix + dx, iy + dy));
        if (it == grid.end()) continue;
        for (int id : it->second) {
          if (std::abs(pts[id].x - p.x) <= kMinSep && std::abs(pts[id].y - p.y) <= kMinSep) {
            close = true;
            break;
          }
        }
      }
    }
    if (close) continue;
    grid[key(ix, iy)].push_back(static_cast<int>(pts.size()));
    pts.push_back(p);
  }
  return pts;
}

namespace {

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// > 0 iff d lies strictly inside the circumcircle of CCW triangle (a, b, c).
double in_circle(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
         ad * (bdx * cdy - bdy * cdx);
}

struct BwTri {
  std::array<int, 3> v;    // CCW
  std::array<int, 3> adj;  // adj[k]: triangle across edge (v[k], v[k+1]), -1 none
  bool alive = true;
};

class BowyerWatson {
 public:
  explicit BowyerWatson(const std::vector<Point>& input) : n_(static_cast<int>(input.size())) {
    pts_ = input;

    double xmin = pts_[0].x, xmax = xmin, ymin = pts_[0].y, ymax = ymin;
    for (const Point& p : pts_) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-8});
    const double big = 1e4 * span;  // super-triangle dwarfs the cloud
    pts_.push_back({cx - 3.0 * big, cy - big});
    pts_.push_back({cx + 3.0 * big, cy - big});
    pts_.push_back({cx, cy + 3.0 * big});
    tris_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}, true});
  }

  std::vector<std::array<int, 3>> run() {
    for (int pid = 0; pid < n_; ++pid) insert(pid);

    std::vector<std::array<int, 3>> out;
    for (const BwTri& t : tris_) {
      if (!t.alive || t.v[0] >= n_ || t.v[1] >= n_ || t.v[2] >= n_) continue;
      int r = 0;  // rotate smallest id first; rotation keeps orientation
      if (t.v[1] < t.v[r]) r = 1;
      if (t.v[2] < t.v[r]) r = 2;
      out.push_back({t.v[r], t.v[(r + 1) % 3], t.v[(r + 2) % 3]});
    }
    if (out.empty()) throw Error("triangulation failed: all points are collinear");
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Point> pts_;
  std::vector<BwTri> tris_;
  std::vector<int> seen_;    // epochs, sized with tris_
  std::vector<int> in_cav_;  // epochs
  int epoch_ = 0;
  int last_alive_ = 0;
  int n_;

  bool contains(int ti, Point p) const {
    const BwTri& t = tris_[ti];
    for (int k = 0; k < 3; ++k)
      if (orient(pts_[t.v[k]], pts_[t.v[(k + 1) % 3]], p) < 0.0) return false;
    return true;
  }

  // Walk from the last created triangle toward p; exhaustive fallback if the
  // walk stalls on degenerate geometry.
  int locate(Point p) const {
    int cur = last_alive_;
    const int cap = static_cast<int>(tris_.size()) * 4 + 16;
    for (int step = 0; step < cap; ++step) {
      const BwTri& t = tris_[cur];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        if (orient(pts_[t.v[k]], pts_[t.v[(k + 1) % 3]], p) < 0.0 && t.adj[k] != -1) {
          next = t.adj[k];
          break;
        }
      }
      if (next == -1) return cur;
      cur = next;
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
      if (tris_[i].alive && contains(i, p)) return i;
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
      const BwTri& t = tris_[i];
      if (t.alive && in_circle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0.0) return i;
    }
    throw Error("triangulation failed: point location stalled");
  }

  void insert(int pid) {
    const Point p = pts_[pid];
    const int start = locate(p);

    seen_.resize(tris_.size(), 0);
    in_cav_.resize(tris_.size(), 0);
    ++epoch_;

    // BFS the circumcircle-violating cavity; the containing triangle is
    // always evicted, even if its in-circle test is a numerical zero.
    std::vector<int> cavity{start};
    seen_[start] = epoch_;
    in_cav_[start] = epoch_;
    for (size_t qi = 0; qi < cavity.size(); ++qi) {
      const BwTri t = tris_[cavity[qi]];
      for (int k = 0; k < 3; ++k) {
        const int nb = t.adj[k];
        if (nb == -1 || seen_[nb] == epoch_) continue;
        seen_[nb] = epoch_;
        const BwTri& u = tris_[nb];
        if (in_circle(pts_[u.v[0]], pts_[u.v[1]], pts_[u.v[2]], p) > 0.0) {
          in_cav_[nb] = epoch_;
          cavity.push_back(nb);
        }
      }
    }

    // Directed boundary edges of the cavity, in BFS discovery order.
    struct Rim {
      int a, b, outside;
    };
    std::vector<Rim> rim;
    for (int ti : cavity) {
      const BwTri& t = tris_[ti];
      for (int k = 0; k < 3; ++k) {
        const int nb = t.adj[k];
        if (nb == -1 || in_cav_[nb] != epoch_) rim.push_back({t.v[k], t.v[(k + 1) % 3], nb});
      }
    }

    for (int ti : cavity) tris_[ti].alive = false;

    // One new CCW triangle (a, b, p) per rim edge. Siblings share the edges
    // at p; the rim is a cycle, so each rim vertex starts and ends exactly
    // one edge.
    std::unordered_map<int, int> starts, ends;
    const int base = static_cast<int>(tris_.size());
    for (size_t i = 0; i < rim.size(); ++i) {
      const int id = base + static_cast<int>(i);
      if (!starts.emplace(rim[i].a, id).second || !ends.emplace(rim[i].b, id).second)
        throw Error("triangulation failed: cavity rim is not a simple cycle");
      tris_.push_back({{rim[i].a, rim[i].b, pid}, {rim[i].outside, -1, -1}, true});
      if (rim[i].outside != -1) {
        BwTri& o = tris_[rim[i].outside];
        for (int k = 0; k < 3; ++k)
          if (o.v[k] == rim[i].b && o.v[(k + 1) % 3] == rim[i].a) o.adj[k] = id;
      }
    }
    for (size_t i = 0; i < rim.size(); ++i) {
      const int id = base + static_cast<int>(i);
      tris_[id].adj[1] = starts.at(rim[i].b);  // edge (b, p) ↔ sibling starting at b
      tris_[id].adj[2] = ends.at(rim[i].a);    // edge (p, a) ↔ sibling ending at a
    }
    last_alive_ = base;
  }
};

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Point>& points) {
  if (points.size() < 3) throw Error("triangulation needs at least 3 points");
  return BowyerWatson(points).run();
}

MeshSource perturbed_grid(int rows, int cols, double perturbation, uint64_t seed) {
  if (rows < 2 || cols < 2) throw Error("grid needs rows and cols >= 2");
  if (!(perturbation >= 0.0 && perturbation <= 0.49))
    throw Error("perturbation must be in [0, 0.49]");

  SplitMix64 rng(seed);
  const double hx = 1.0 / (cols - 1);
  const double hy = 1.0 / (rows - 1);

  MeshSource out;
  out.points.resize(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double x = c * hx, y = r * hy;
      if (r > 0 && r < rows - 1 && c > 0 && c < cols - 1) {
        x += (2.0 * rng.uniform01() - 1.0) * perturbation * hx;
        y += (2.0 * rng.uniform01() - 1.0) * perturbation * hy;
      }
      out.points[static_cast<size_t>(r) * cols + c] = {x, y};
    }
  }

  out.triangles.reserve(static_cast<size_t>(rows - 1) * (cols - 1) * 2);
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const int a = r * cols + c;
      const int b = a + 1;
      const int d = a + cols;
      const int e = d + 1;
      out.triangles.push_back({a, b, e});
      out.triangles.push_back({a, e, d});
    }
  }
  return out;
}

MeshSource generate(const GenSpec& spec) {
  if (spec.kind == GenKind::PerturbedGrid)
    return perturbed_grid(spec.rows, spec.cols, spec.perturbation, spec.seed);
  MeshSource out;
  out.points = generate_points(spec);
  out.triangles = delaunay_triangulate(out.points);
  return out;
}

}  // namespace trismooth
