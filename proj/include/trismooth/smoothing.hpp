#pragma once

#include <cmath>
#include <vector>

#include "trismooth/mesh.hpp"
#include "trismooth/quality.hpp"

namespace trismooth {

/// A: Jacobi-style — every candidate reads the previous pass's coordinates
/// (double-buffered). B: Gauss-Seidel-style — candidates read positions
/// already updated this pass where available (in place).
enum class IterationForm { A, B };

/// How the per-vertex min-quality field is maintained: Fused writes a
/// vertex's own minimum during its accept step (then reconciles at pass end);
/// TwoPhase leaves the field untouched until the pass-end bulk update. Same
/// decisions, same final meshes — only the work schedule differs.
enum class UpdateStrategy { Fused, TwoPhase };

enum class Backend { Serial, Parallel };

enum class StopReason { MaxIters, Displacement, NoMoves };

const char* to_string(IterationForm form);
const char* to_string(UpdateStrategy strategy);
const char* to_string(Backend backend);
const char* to_string(StopReason reason);

struct SmoothConfig {
  IterationForm form = IterationForm::B;
  UpdateStrategy strategy = UpdateStrategy::TwoPhase;
  Backend backend = Backend::Serial;
  int workers = 1;       // parallel backend only
  int max_iters = 100;
  double move_tol = 1e-6;  // stop when max displacement < move_tol × bbox diagonal
};

/// Throws Error on out-of-range fields (workers/max_iters < 1, move_tol < 0).
void validate(const SmoothConfig& config);

struct RunStats {
  int iterations = 0;
  StopReason stop = StopReason::MaxIters;
  double init_ms = 0.0;    // flag reset + initial per-triangle α
  double topo_ms = 0.0;    // adjacency build
  double constr_ms = 0.0;  // boundary classification + initial min reduction
  double iter_ms = 0.0;    // all smoothing passes
  double total_ms = 0.0;
  double min_alpha_before = 0.0;
  double min_alpha_after = 0.0;
  double mean_alpha_before = 0.0;
  double mean_alpha_after = 0.0;
  std::vector<int> accepted_per_pass;
  std::vector<double> max_disp_per_pass;
};

/// Full pipeline: init_flags → compute_all_qualities → find_neighbors →
/// determine_constraints → smoothing passes until max_iters, displacement
/// below tolerance, or a pass with zero accepted moves. Constrained vertices
/// never move; connectivity is never touched.
RunStats smooth(Mesh& mesh, const SmoothConfig& config);

namespace detail {

/// Mean of v's (deduplicated, ascending) neighbors' positions as seen
/// through `view`. The same candidate rule serves both forms; the view
/// decides which pass each neighbor read comes from.
template <class Storage, class View>
Point neighbor_mean(const Storage& m, const View& view, int v) {
  double sx = 0.0, sy = 0.0;
  const auto nb = m.neighbors(v);
  for (int u : nb) {
    const Point p = view.pos(u);
    sx += p.x;
    sy += p.y;
  }
  const double inv = 1.0 / static_cast<double>(nb.size());
  return {sx * inv, sy * inv};
}

struct PassChunkResult {
  int accepted = 0;
  double max_disp = 0.0;
};

/// One pass over vertices [begin, end): candidate from `view`, smart accept
/// (strict min-α improvement, hypothetical evaluated through the same view),
/// coordinates written live. With `fused`, the vertex's own min-quality slot
/// is refreshed on accept. Writes touch only vertices in the range.
template <class Storage, class View>
PassChunkResult smooth_range(Storage& m, const View& view, int begin, int end, bool fused) {
  PassChunkResult out;
  for (int v = begin; v < end; ++v) {
    if (m.is_boundary(v)) continue;
    const Point candidate = neighbor_mean(m, view, v);
    const double hypothetical = min_alpha_at(m, view, v, candidate);
    if (!(hypothetical > m.vertex_min_quality(v))) continue;
    const Point old = m.position(v);
    m.set_position(v, candidate);
    if (fused) m.set_vertex_min_quality(v, hypothetical);
    ++out.accepted;
    const double dx = candidate.x - old.x, dy = candidate.y - old.y;
    const double disp = std::sqrt(dx * dx + dy * dy);
    if (disp > out.max_disp) out.max_disp = disp;
  }
  return out;
}

}  // namespace detail

}  // namespace trismooth
