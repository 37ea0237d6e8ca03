#include "trismooth/quality.hpp"

#include <type_traits>

#include "trismooth/parallel.hpp"

namespace trismooth {

namespace {

// Runs fn over [0, n) in one go, or as one contiguous chunk per pool worker.
template <class F>
void for_chunks(int n, ThreadPool* pool, F fn) {
  if (pool) {
    const int workers = pool->workers();
    pool->run(workers, [&](int w) {
      const ChunkRange r = worker_chunk(n, workers, w);
      fn(r.begin, r.end);
    });
  } else {
    fn(0, n);
  }
}

}  // namespace

void compute_all_qualities(Mesh& mesh, ThreadPool* pool) {
  const int nt = mesh.triangle_count();
  mesh.visit([&](auto& m) {
    for_chunks(nt, pool, [&](int b, int e) { detail::refresh_tri_alphas(m, b, e); });
  });
}

double min_incident_quality(const Mesh& mesh, int v) {
  return mesh.visit([&](const auto& m) {
    if (m.incident_count(v) == 0)
      throw Error("vertex " + std::to_string(v) + " has no incident triangles");
    double best = std::numeric_limits<double>::infinity();
    for (int t : m.incident(v)) best = std::min(best, m.tri_quality(t));
    return best;
  });
}

double update_fused(const Mesh& mesh, int v, Point candidate) {
  return mesh.visit([&](const auto& m) {
    using Storage = std::decay_t<decltype(m)>;
    return detail::min_alpha_at(m, detail::LiveView<Storage>{m}, v, candidate);
  });
}

void update_two_phase(Mesh& mesh, ThreadPool* pool) {
  const int nt = mesh.triangle_count();
  const int nv = mesh.vertex_count();
  mesh.visit([&](auto& m) {
    for_chunks(nt, pool, [&](int b, int e) { detail::refresh_tri_alphas(m, b, e); });
    for_chunks(nv, pool, [&](int b, int e) { detail::reduce_vertex_minima(m, b, e); });
  });
}

void reduce_vertex_minima(Mesh& mesh, ThreadPool* pool) {
  const int nv = mesh.vertex_count();
  mesh.visit([&](auto& m) {
    for_chunks(nv, pool, [&](int b, int e) { detail::reduce_vertex_minima(m, b, e); });
  });
}

}  // namespace trismooth
