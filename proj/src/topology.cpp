#include "trismooth/topology.hpp"

#include <algorithm>
#include <unordered_map>

#include "trismooth/parallel.hpp"

namespace trismooth {

namespace {

template <class Storage>
Adjacency build_adjacency(Storage& m) {
  const int nv = m.vertex_count();
  const int nt = m.triangle_count();

  Adjacency adj;
  adj.raw.offsets.assign(nv + 1, 0);
  adj.incident.offsets.assign(nv + 1, 0);
  for (int t = 0; t < nt; ++t) {
    for (int v : m.tri(t)) {
      adj.raw.offsets[v + 1] += 2;
      adj.incident.offsets[v + 1] += 1;
    }
  }
  for (int v = 0; v < nv; ++v) {
    adj.raw.offsets[v + 1] += adj.raw.offsets[v];
    adj.incident.offsets[v + 1] += adj.incident.offsets[v];
  }
  adj.raw.values.resize(adj.raw.offsets[nv]);
  adj.incident.values.resize(adj.incident.offsets[nv]);

  std::vector<int> raw_fill(adj.raw.offsets.begin(), adj.raw.offsets.end() - 1);
  std::vector<int> inc_fill(adj.incident.offsets.begin(), adj.incident.offsets.end() - 1);
  for (int t = 0; t < nt; ++t) {
    const auto tv = m.tri(t);
    for (int k = 0; k < 3; ++k) {
      const int v = tv[k];
      adj.raw.values[raw_fill[v]++] = tv[k == 0 ? 1 : 0];
      adj.raw.values[raw_fill[v]++] = tv[k == 2 ? 1 : 2];
      adj.incident.values[inc_fill[v]++] = t;
    }
  }

  adj.unique.offsets.assign(nv + 1, 0);
  adj.unique.values.reserve(adj.raw.values.size());
  adj.multiplicity.reserve(adj.raw.values.size());
  std::vector<int> scratch;
  for (int v = 0; v < nv; ++v) {
    auto row = adj.raw.row(v);
    scratch.assign(row.begin(), row.end());
    std::sort(scratch.begin(), scratch.end());
    for (size_t i = 0; i < scratch.size();) {
      size_t j = i + 1;
      while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
      adj.unique.values.push_back(scratch[i]);
      adj.multiplicity.push_back(static_cast<int>(j - i));
      i = j;
    }
    adj.unique.offsets[v + 1] = static_cast<int>(adj.unique.values.size());
  }

  m.assign_adjacency(adj.unique, adj.incident);
  return adj;
}

}  // namespace

Adjacency find_neighbors(Mesh& mesh) {
  return mesh.visit([](auto& m) { return build_adjacency(m); });
}

void determine_constraints(Mesh& mesh, const Adjacency& adj, ThreadPool* pool) {
  const int nv = mesh.vertex_count();
  mesh.visit([&](auto& m) {
    auto classify = [&](int begin, int end) {
      for (int v = begin; v < end; ++v) {
        const int lo = adj.unique.offsets[v];
        const int hi = adj.unique.offsets[v + 1];
        bool boundary = lo == hi;
        for (int i = lo; i < hi && !boundary; ++i) boundary = adj.multiplicity[i] != 2;
        m.set_boundary(v, boundary);
      }
    };
    if (pool) {
      const int workers = pool->workers();
      pool->run(workers, [&](int w) {
        const ChunkRange r = worker_chunk(nv, workers, w);
        classify(r.begin, r.end);
      });
    } else {
      classify(0, nv);
    }
  });
}

namespace {

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

std::unordered_map<uint64_t, int> edge_use_counts(const Mesh& mesh) {
  std::unordered_map<uint64_t, int> counts;
  counts.reserve(static_cast<size_t>(mesh.triangle_count()) * 2);
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < m.triangle_count(); ++t) {
      const auto tv = m.tri(t);
      for (int k = 0; k < 3; ++k) ++counts[edge_key(tv[k], tv[(k + 1) % 3])];
    }
  });
  return counts;
}

}  // namespace

std::vector<bool> boundary_oracle(const Mesh& mesh) {
  std::vector<bool> boundary(mesh.vertex_count(), false);
  for (const auto& [key, uses] : edge_use_counts(mesh)) {
    if (uses == 1) {
      boundary[key >> 32] = true;
      boundary[static_cast<uint32_t>(key)] = true;
    }
  }
  return boundary;
}

int non_manifold_edge_count(const Mesh& mesh) {
  int bad = 0;
  for (const auto& [key, uses] : edge_use_counts(mesh))
    if (uses > 2) ++bad;
  return bad;
}

}  // namespace trismooth
