#include "trismooth/smoothing.hpp"

#include <chrono>
#include <memory>

#include "trismooth/parallel.hpp"
#include "trismooth/topology.hpp"

namespace trismooth {

const char* to_string(IterationForm form) { return form == IterationForm::A ? "a" : "b"; }

const char* to_string(UpdateStrategy strategy) {
  return strategy == UpdateStrategy::Fused ? "fused" : "twophase";
}

const char* to_string(Backend backend) {
  return backend == Backend::Serial ? "serial" : "parallel";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIters: return "max_iters";
    case StopReason::Displacement: return "displacement";
    case StopReason::NoMoves: return "no_moves";
  }
  return "?";
}

void validate(const SmoothConfig& config) {
  if (config.workers < 1) throw Error("workers must be >= 1");
  if (config.max_iters < 1) throw Error("max_iters must be >= 1");
  if (!(config.move_tol >= 0.0)) throw Error("move_tol must be >= 0");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct AlphaSummary {
  double min = 0.0;
  double mean = 0.0;
};

template <class Storage>
AlphaSummary alpha_summary(const Storage& m) {
  const int nt = m.triangle_count();
  double lo = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int t = 0; t < nt; ++t) {
    const double q = m.tri_quality(t);
    lo = std::min(lo, q);
    sum += q;
  }
  return {lo, sum / static_cast<double>(nt)};
}

template <class Storage>
double bbox_diagonal(const Storage& m) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (int v = 0; v < m.vertex_count(); ++v) {
    const Point p = m.position(v);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

template <class Storage>
void run_passes(Storage& m, const SmoothConfig& cfg, ThreadPool* pool, double bbox_diag,
                RunStats& stats) {
  const int nv = m.vertex_count();
  const int nt = m.triangle_count();
  const int chunks = cfg.backend == Backend::Parallel ? cfg.workers : 1;
  const bool fused = cfg.strategy == UpdateStrategy::Fused;

  typename Storage::CoordBuffer snapshot;
  std::vector<detail::PassChunkResult> partial(chunks);

  auto chunked = [&](int n, auto&& fn) {
    if (pool) {
      pool->run(chunks, [&](int w) {
        const ChunkRange r = worker_chunk(n, chunks, w);
        fn(r.begin, r.end);
      });
    } else {
      fn(0, n);
    }
  };

  for (int pass = 0; pass < cfg.max_iters; ++pass) {
    m.copy_coords_to(snapshot);  // Form A: previous-pass buffer; Form B: chunk-external reads

    auto chunk_task = [&](int w) {
      const ChunkRange r = worker_chunk(nv, chunks, w);
      if (cfg.form == IterationForm::A) {
        const detail::SnapshotView<typename Storage::CoordBuffer> view{snapshot};
        partial[w] = detail::smooth_range(m, view, r.begin, r.end, fused);
      } else {
        const detail::ChunkView<Storage> view{m, snapshot, r.begin, r.end};
        partial[w] = detail::smooth_range(m, view, r.begin, r.end, fused);
      }
    };
    if (pool)
      pool->run(chunks, chunk_task);
    else
      chunk_task(0);

    // Pass-end synchronization, identical for both strategies: per-triangle α
    // recomputed once, then per-vertex minima. For Fused this is the
    // reconciliation of mid-pass slot writes.
    chunked(nt, [&](int b, int e) { detail::refresh_tri_alphas(m, b, e); });
    chunked(nv, [&](int b, int e) { detail::reduce_vertex_minima(m, b, e); });

    int accepted = 0;
    double max_disp = 0.0;
    for (const auto& p : partial) {
      accepted += p.accepted;
      max_disp = std::max(max_disp, p.max_disp);
    }
    stats.accepted_per_pass.push_back(accepted);
    stats.max_disp_per_pass.push_back(max_disp);
    stats.iterations = pass + 1;

    if (accepted == 0) {
      stats.stop = StopReason::NoMoves;
      return;
    }
    if (max_disp < cfg.move_tol * bbox_diag) {
      stats.stop = StopReason::Displacement;
      return;
    }
  }
  stats.stop = StopReason::MaxIters;
}

}  // namespace

RunStats smooth(Mesh& mesh, const SmoothConfig& config) {
  validate(config);
  RunStats stats;
  const auto t_total = Clock::now();

  std::unique_ptr<ThreadPool> pool;
  if (config.backend == Backend::Parallel) pool = std::make_unique<ThreadPool>(config.workers);

  auto t0 = Clock::now();
  init_flags(mesh);
  compute_all_qualities(mesh, pool.get());
  stats.init_ms = ms_since(t0);

  t0 = Clock::now();
  const Adjacency adj = find_neighbors(mesh);
  stats.topo_ms = ms_since(t0);

  t0 = Clock::now();
  determine_constraints(mesh, adj, pool.get());
  reduce_vertex_minima(mesh, pool.get());
  stats.constr_ms = ms_since(t0);

  const AlphaSummary before = mesh.visit([](const auto& m) { return alpha_summary(m); });
  stats.min_alpha_before = before.min;
  stats.mean_alpha_before = before.mean;
  const double diag = mesh.visit([](const auto& m) { return bbox_diagonal(m); });

  t0 = Clock::now();
  mesh.visit([&](auto& m) { run_passes(m, config, pool.get(), diag, stats); });
  stats.iter_ms = ms_since(t0);

  const AlphaSummary after = mesh.visit([](const auto& m) { return alpha_summary(m); });
  stats.min_alpha_after = after.min;
  stats.mean_alpha_after = after.mean;
  stats.total_ms = ms_since(t_total);
  return stats;
}

}  // namespace trismooth
