#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace trismooth {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

enum class Layout { AoS, SoA };

const char* to_string(Layout layout);

/// Quality slots hold this sentinel until a quality pass has run.
inline constexpr double kUnsetQuality = std::numeric_limits<double>::quiet_NaN();

inline bool quality_is_set(double q) { return !std::isnan(q); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid mesh input: out-of-range indices, degenerate connectivity.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Compressed row storage for per-vertex variable-length lists.
struct Csr {
  std::vector<int> offsets;  // size rows+1
  std::vector<int> values;

  int rows() const { return offsets.empty() ? 0 : static_cast<int>(offsets.size()) - 1; }
  std::span<const int> row(int i) const {
    return {values.data() + offsets[i], static_cast<size_t>(offsets[i + 1] - offsets[i])};
  }
  int count(int i) const { return offsets[i + 1] - offsets[i]; }
};

/// Record-per-vertex storage. Scalar per-vertex fields are interleaved in one
/// record; neighbor/incident lists are offset-indexed slices of shared flat
/// arrays sized by a counting pass.
class AosMesh {
 public:
  static constexpr Layout kLayout = Layout::AoS;

  struct VertexRec {
    double x = 0.0;
    double y = 0.0;
    int neighbor_count = 0;
    int incident_count = 0;
    int neighbor_offset = 0;
    int incident_offset = 0;
    bool boundary = false;
    double min_quality = kUnsetQuality;
  };

  struct TriangleRec {
    std::array<int, 3> v{};
    double quality = kUnsetQuality;
  };

  struct CoordBuffer {
    std::vector<Point> pts;
    Point get(int i) const { return pts[i]; }
    void resize(size_t n) { pts.resize(n); }
  };

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  int triangle_count() const { return static_cast<int>(tris_.size()); }

  Point position(int v) const { return {verts_[v].x, verts_[v].y}; }
  void set_position(int v, Point p) {
    verts_[v].x = p.x;
    verts_[v].y = p.y;
  }

  std::array<int, 3> tri(int t) const { return tris_[t].v; }
  double tri_quality(int t) const { return tris_[t].quality; }
  void set_tri_quality(int t, double q) { tris_[t].quality = q; }

  double vertex_min_quality(int v) const { return verts_[v].min_quality; }
  void set_vertex_min_quality(int v, double q) { verts_[v].min_quality = q; }

  bool is_boundary(int v) const { return verts_[v].boundary; }
  void set_boundary(int v, bool b) { verts_[v].boundary = b; }

  int neighbor_count(int v) const { return verts_[v].neighbor_count; }
  std::span<const int> neighbors(int v) const {
    const VertexRec& r = verts_[v];
    return {neighbor_ids_.data() + r.neighbor_offset, static_cast<size_t>(r.neighbor_count)};
  }

  int incident_count(int v) const { return verts_[v].incident_count; }
  std::span<const int> incident(int v) const {
    const VertexRec& r = verts_[v];
    return {incident_ids_.data() + r.incident_offset, static_cast<size_t>(r.incident_count)};
  }

  void reset_topology_state();
  void assign_adjacency(const Csr& unique_neighbors, const Csr& incident_triangles);

  void copy_coords_to(CoordBuffer& buf) const {
    buf.resize(verts_.size());
    for (size_t i = 0; i < verts_.size(); ++i) buf.pts[i] = {verts_[i].x, verts_[i].y};
  }

  // construction access
  std::vector<VertexRec>& verts() { return verts_; }
  const std::vector<VertexRec>& verts() const { return verts_; }
  std::vector<TriangleRec>& tris() { return tris_; }
  const std::vector<TriangleRec>& tris() const { return tris_; }
  const std::vector<int>& neighbor_ids() const { return neighbor_ids_; }
  const std::vector<int>& incident_ids() const { return incident_ids_; }

 private:
  std::vector<VertexRec> verts_;
  std::vector<TriangleRec> tris_;
  std::vector<int> neighbor_ids_;
  std::vector<int> incident_ids_;
};

/// Array-per-field storage. Same logical content as AosMesh.
class SoaMesh {
 public:
  static constexpr Layout kLayout = Layout::SoA;

  struct CoordBuffer {
    std::vector<double> x, y;
    Point get(int i) const { return {x[i], y[i]}; }
    void resize(size_t n) {
      x.resize(n);
      y.resize(n);
    }
  };

  int vertex_count() const { return static_cast<int>(x_.size()); }
  int triangle_count() const { return static_cast<int>(tri_quality_.size()); }

  Point position(int v) const { return {x_[v], y_[v]}; }
  void set_position(int v, Point p) {
    x_[v] = p.x;
    y_[v] = p.y;
  }

  std::array<int, 3> tri(int t) const {
    return {tri_verts_[3 * t], tri_verts_[3 * t + 1], tri_verts_[3 * t + 2]};
  }
  double tri_quality(int t) const { return tri_quality_[t]; }
  void set_tri_quality(int t, double q) { tri_quality_[t] = q; }

  double vertex_min_quality(int v) const { return min_quality_[v]; }
  void set_vertex_min_quality(int v, double q) { min_quality_[v] = q; }

  bool is_boundary(int v) const { return boundary_[v] != 0; }
  void set_boundary(int v, bool b) { boundary_[v] = b ? 1 : 0; }

  int neighbor_count(int v) const { return neighbor_count_[v]; }
  std::span<const int> neighbors(int v) const {
    return {neighbor_ids_.data() + neighbor_offset_[v],
            static_cast<size_t>(neighbor_count_[v])};
  }

  int incident_count(int v) const { return incident_count_[v]; }
  std::span<const int> incident(int v) const {
    return {incident_ids_.data() + incident_offset_[v],
            static_cast<size_t>(incident_count_[v])};
  }

  void reset_topology_state();
  void assign_adjacency(const Csr& unique_neighbors, const Csr& incident_triangles);

  void copy_coords_to(CoordBuffer& buf) const {
    buf.x = x_;
    buf.y = y_;
  }

  // construction access
  std::vector<double>& xs() { return x_; }
  std::vector<double>& ys() { return y_; }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  std::vector<int>& tri_verts() { return tri_verts_; }
  const std::vector<int>& tri_verts() const { return tri_verts_; }
  std::vector<double>& tri_qualities() { return tri_quality_; }
  const std::vector<double>& tri_qualities() const { return tri_quality_; }
  void resize_vertices(int n);

 private:
  std::vector<double> x_, y_;
  std::vector<int> neighbor_count_, incident_count_;
  std::vector<int> neighbor_offset_, incident_offset_;
  std::vector<uint8_t> boundary_;
  std::vector<double> min_quality_;
  std::vector<int> tri_verts_;
  std::vector<double> tri_quality_;
  std::vector<int> neighbor_ids_;
  std::vector<int> incident_ids_;
};

/// A triangular mesh in one of the two physical layouts.
class Mesh {
 public:
  Mesh() : storage_(AosMesh{}) {}
  explicit Mesh(AosMesh m) : storage_(std::move(m)) {}
  explicit Mesh(SoaMesh m) : storage_(std::move(m)) {}

  Layout layout() const {
    return std::holds_alternative<AosMesh>(storage_) ? Layout::AoS : Layout::SoA;
  }

  template <class F>
  decltype(auto) visit(F&& f) {
    return std::visit(std::forward<F>(f), storage_);
  }
  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), storage_);
  }

  int vertex_count() const {
    return visit([](const auto& m) { return m.vertex_count(); });
  }
  int triangle_count() const {
    return visit([](const auto& m) { return m.triangle_count(); });
  }

  AosMesh& aos() { return std::get<AosMesh>(storage_); }
  const AosMesh& aos() const { return std::get<AosMesh>(storage_); }
  SoaMesh& soa() { return std::get<SoaMesh>(storage_); }
  const SoaMesh& soa() const { return std::get<SoaMesh>(storage_); }

 private:
  std::variant<AosMesh, SoaMesh> storage_;
};

/// Validates connectivity and assembles a mesh in the requested layout.
/// Vertices start with no topology: zero counts, no constraints, unset
/// qualities.
Mesh build_mesh(const std::vector<Point>& points,
                const std::vector<std::array<int, 3>>& triangles, Layout layout);

/// Resets per-vertex counters, constraint flags, and quality slots to their
/// pre-topology state. Idempotent.
void init_flags(Mesh& mesh);

/// Produces a logically equal mesh in the target layout.
Mesh convert_layout(const Mesh& mesh, Layout target);

/// Field-by-field equality across layouts; unset quality slots compare equal.
bool logically_equal(const Mesh& a, const Mesh& b);

}  // namespace trismooth
