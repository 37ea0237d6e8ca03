#include "trismooth/mesh.hpp"

namespace trismooth {

const char* to_string(Layout layout) { return layout == Layout::AoS ? "aos" : "soa"; }

void AosMesh::reset_topology_state() {
  for (VertexRec& r : verts_) {
    r.neighbor_count = 0;
    r.incident_count = 0;
    r.neighbor_offset = 0;
    r.incident_offset = 0;
    r.boundary = false;
    r.min_quality = kUnsetQuality;
  }
  neighbor_ids_.clear();
  incident_ids_.clear();
}

void AosMesh::assign_adjacency(const Csr& unique_neighbors, const Csr& incident_triangles) {
  neighbor_ids_ = unique_neighbors.values;
  incident_ids_ = incident_triangles.values;
  for (int v = 0; v < vertex_count(); ++v) {
    VertexRec& r = verts_[v];
    r.neighbor_offset = unique_neighbors.offsets[v];
    r.neighbor_count = unique_neighbors.count(v);
    r.incident_offset = incident_triangles.offsets[v];
    r.incident_count = incident_triangles.count(v);
  }
}

void SoaMesh::reset_topology_state() {
  const size_t n = x_.size();
  neighbor_count_.assign(n, 0);
  incident_count_.assign(n, 0);
  neighbor_offset_.assign(n, 0);
  incident_offset_.assign(n, 0);
  boundary_.assign(n, 0);
  min_quality_.assign(n, kUnsetQuality);
  neighbor_ids_.clear();
  incident_ids_.clear();
}

void SoaMesh::assign_adjacency(const Csr& unique_neighbors, const Csr& incident_triangles) {
  neighbor_ids_ = unique_neighbors.values;
  incident_ids_ = incident_triangles.values;
  for (int v = 0; v < vertex_count(); ++v) {
    neighbor_offset_[v] = unique_neighbors.offsets[v];
    neighbor_count_[v] = unique_neighbors.count(v);
    incident_offset_[v] = incident_triangles.offsets[v];
    incident_count_[v] = incident_triangles.count(v);
  }
}

void SoaMesh::resize_vertices(int n) {
  x_.resize(n);
  y_.resize(n);
  neighbor_count_.assign(n, 0);
  incident_count_.assign(n, 0);
  neighbor_offset_.assign(n, 0);
  incident_offset_.assign(n, 0);
  boundary_.assign(n, 0);
  min_quality_.assign(n, kUnsetQuality);
}

namespace {

void validate_triangles(const std::vector<Point>& points,
                        const std::vector<std::array<int, 3>>& triangles) {
  if (triangles.empty()) throw StructuralError("mesh must contain at least one triangle");
  const int n = static_cast<int>(points.size());
  for (size_t t = 0; t < triangles.size(); ++t) {
    const auto& tv = triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tv[k] < 0 || tv[k] >= n)
        throw StructuralError("triangle " + std::to_string(t) + " references vertex " +
                              std::to_string(tv[k]) + " outside [0, " + std::to_string(n) + ")");
    }
    if (tv[0] == tv[1] || tv[1] == tv[2] || tv[0] == tv[2])
      throw StructuralError("triangle " + std::to_string(t) + " repeats a vertex");
  }
}

}  // namespace

Mesh build_mesh(const std::vector<Point>& points,
                const std::vector<std::array<int, 3>>& triangles, Layout layout) {
  validate_triangles(points, triangles);
  if (layout == Layout::AoS) {
    AosMesh m;
    m.verts().resize(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
      m.verts()[i].x = points[i].x;
      m.verts()[i].y = points[i].y;
    }
    m.tris().resize(triangles.size());
    for (size_t t = 0; t < triangles.size(); ++t) m.tris()[t].v = triangles[t];
    return Mesh(std::move(m));
  }
  SoaMesh m;
  m.resize_vertices(static_cast<int>(points.size()));
  for (size_t i = 0; i < points.size(); ++i) {
    m.xs()[i] = points[i].x;
    m.ys()[i] = points[i].y;
  }
  m.tri_verts().resize(3 * triangles.size());
  m.tri_qualities().assign(triangles.size(), kUnsetQuality);
  for (size_t t = 0; t < triangles.size(); ++t)
    for (int k = 0; k < 3; ++k) m.tri_verts()[3 * t + k] = triangles[t][k];
  return Mesh(std::move(m));
}

void init_flags(Mesh& mesh) {
  mesh.visit([](auto& m) { m.reset_topology_state(); });
}

namespace {

template <class Src, class Dst>
void copy_fields(const Src& src, Dst& dst) {
  const int nv = src.vertex_count();
  const int nt = src.triangle_count();
  for (int v = 0; v < nv; ++v) {
    dst.set_position(v, src.position(v));
    dst.set_boundary(v, src.is_boundary(v));
    dst.set_vertex_min_quality(v, src.vertex_min_quality(v));
  }
  Csr unique_neighbors, incident_triangles;
  unique_neighbors.offsets.resize(nv + 1);
  incident_triangles.offsets.resize(nv + 1);
  unique_neighbors.offsets[0] = 0;
  incident_triangles.offsets[0] = 0;
  for (int v = 0; v < nv; ++v) {
    auto nb = src.neighbors(v);
    unique_neighbors.values.insert(unique_neighbors.values.end(), nb.begin(), nb.end());
    unique_neighbors.offsets[v + 1] = static_cast<int>(unique_neighbors.values.size());
    auto inc = src.incident(v);
    incident_triangles.values.insert(incident_triangles.values.end(), inc.begin(), inc.end());
    incident_triangles.offsets[v + 1] = static_cast<int>(incident_triangles.values.size());
  }
  dst.assign_adjacency(unique_neighbors, incident_triangles);
  for (int t = 0; t < nt; ++t) dst.set_tri_quality(t, src.tri_quality(t));
}

template <class Src>
Mesh convert_from(const Src& src, Layout target) {
  if (target == Layout::AoS) {
    AosMesh dst;
    dst.verts().resize(src.vertex_count());
    dst.tris().resize(src.triangle_count());
    for (int t = 0; t < src.triangle_count(); ++t) dst.tris()[t].v = src.tri(t);
    copy_fields(src, dst);
    return Mesh(std::move(dst));
  }
  SoaMesh dst;
  dst.resize_vertices(src.vertex_count());
  dst.tri_verts().resize(3 * src.triangle_count());
  dst.tri_qualities().resize(src.triangle_count());
  for (int t = 0; t < src.triangle_count(); ++t) {
    auto tv = src.tri(t);
    for (int k = 0; k < 3; ++k) dst.tri_verts()[3 * t + k] = tv[k];
  }
  copy_fields(src, dst);
  return Mesh(std::move(dst));
}

bool quality_equal(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace

Mesh convert_layout(const Mesh& mesh, Layout target) {
  return mesh.visit([target](const auto& m) { return convert_from(m, target); });
}

bool logically_equal(const Mesh& a, const Mesh& b) {
  return a.visit([&b](const auto& ma) {
    return b.visit([&ma](const auto& mb) {
      if (ma.vertex_count() != mb.vertex_count()) return false;
      if (ma.triangle_count() != mb.triangle_count()) return false;
      for (int v = 0; v < ma.vertex_count(); ++v) {
        if (!(ma.position(v) == mb.position(v))) return false;
        if (ma.is_boundary(v) != mb.is_boundary(v)) return false;
        if (!quality_equal(ma.vertex_min_quality(v), mb.vertex_min_quality(v))) return false;
        auto na = ma.neighbors(v);
        auto nb = mb.neighbors(v);
        if (na.size() != nb.size() || !std::equal(na.begin(), na.end(), nb.begin()))
          return false;
        auto ia = ma.incident(v);
        auto ib = mb.incident(v);
        if (ia.size() != ib.size() || !std::equal(ia.begin(), ia.end(), ib.begin()))
          return false;
      }
      for (int t = 0; t < ma.triangle_count(); ++t) {
        if (ma.tri(t) != mb.tri(t)) return false;
        if (!quality_equal(ma.tri_quality(t), mb.tri_quality(t))) return false;
      }
      return true;
    });
  });
}

}  // namespace trismooth
