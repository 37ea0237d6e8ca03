#include "trismooth/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "trismooth/meshgen.hpp"

namespace trismooth {

int resolve_workers(int requested) {
  int w = requested;
  if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  if (const char* cap_str = std::getenv("TRISMOOTH_MAX_WORKERS")) {
    const int cap = std::atoi(cap_str);
    if (cap >= 1 && w > cap) w = cap;
  }
  return w;
}

namespace {

std::string cell_name(const BenchRecord& r) {
  std::string s = std::to_string(r.size);
  s += '/';
  s += to_string(r.layout);
  s += "/form-";
  s += to_string(r.form);
  s += '/';
  s += to_string(r.strategy);
  s += '/';
  s += to_string(r.backend);
  return s;
}

std::vector<Point> coords_of(const Mesh& mesh) {
  std::vector<Point> out(mesh.vertex_count());
  mesh.visit([&](const auto& m) {
    for (int v = 0; v < m.vertex_count(); ++v) out[v] = m.position(v);
  });
  return out;
}

// Constraint and topology preservation against the generating source.
void verify_cell(const Mesh& mesh, const MeshSource& src, const std::string& cell) {
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < m.triangle_count(); ++t) {
      if (m.tri(t) != src.triangles[t])
        throw Error("bench cell " + cell + ": connectivity changed at triangle " +
                    std::to_string(t));
    }
    for (int v = 0; v < m.vertex_count(); ++v) {
      if (m.is_boundary(v) && !(m.position(v) == src.points[v]))
        throw Error("bench cell " + cell + ": constrained vertex " + std::to_string(v) +
                    " moved");
    }
  });
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& options) {
  if (options.repeats < 1) throw Error("bench repeats must be >= 1");
  const int par_workers = resolve_workers(options.workers);

  constexpr Layout kLayouts[] = {Layout::AoS, Layout::SoA};
  constexpr IterationForm kForms[] = {IterationForm::A, IterationForm::B};
  constexpr UpdateStrategy kStrategies[] = {UpdateStrategy::Fused, UpdateStrategy::TwoPhase};
  constexpr Backend kBackends[] = {Backend::Serial, Backend::Parallel};

  std::vector<BenchRecord> records;
  for (int size : options.sizes) {
    const MeshSource src = generate({GenKind::DelaunayRandom, size, 0, 0, 0.0, options.seed});

    // final coordinates per (form, strategy, backend): AoS fills, SoA must match
    std::map<std::tuple<int, int, int>, std::vector<Point>> final_coords;
    const size_t first_of_size = records.size();
    double baseline_total = 0.0;

    for (Layout layout : kLayouts) {
      for (IterationForm form : kForms) {
        for (UpdateStrategy strategy : kStrategies) {
          for (Backend backend : kBackends) {
            BenchRecord rec;
            rec.size = size;
            rec.layout = layout;
            rec.form = form;
            rec.strategy = strategy;
            rec.backend = backend;
            rec.workers = backend == Backend::Parallel ? par_workers : 1;

            SmoothConfig cfg;
            cfg.form = form;
            cfg.strategy = strategy;
            cfg.backend = backend;
            cfg.workers = rec.workers;
            cfg.max_iters = options.max_iters;
            cfg.move_tol = options.move_tol;

            const std::string cell = cell_name(rec);

            // verification pass (also the discarded warm-up)
            {
              Mesh mesh = build_mesh(src.points, src.triangles, layout);
              const RunStats stats = smooth(mesh, cfg);
              verify_cell(mesh, src, cell);
              const auto key = std::make_tuple(static_cast<int>(form),
                                               static_cast<int>(strategy),
                                               static_cast<int>(backend));
              auto coords = coords_of(mesh);
              const auto it = final_coords.find(key);
              if (it == final_coords.end())
                final_coords.emplace(key, std::move(coords));
              else if (it->second != coords)
                throw Error("bench cell " + cell + ": result differs across layouts");
              rec.iterations = stats.iterations;
              rec.min_alpha_before = stats.min_alpha_before;
              rec.min_alpha_after = stats.min_alpha_after;
              rec.mean_alpha_before = stats.mean_alpha_before;
              rec.mean_alpha_after = stats.mean_alpha_after;
              rec.accepted_per_pass = stats.accepted_per_pass;
            }

            std::vector<double> init_t, topo_t, constr_t, iter_t, total_t;
            for (int r = 0; r < options.repeats; ++r) {
              Mesh mesh = build_mesh(src.points, src.triangles, layout);
              const RunStats stats = smooth(mesh, cfg);
              init_t.push_back(stats.init_ms);
              topo_t.push_back(stats.topo_ms);
              constr_t.push_back(stats.constr_ms);
              iter_t.push_back(stats.iter_ms);
              total_t.push_back(stats.total_ms);
            }
            rec.init_ms = median(init_t);
            rec.topo_ms = median(topo_t);
            rec.constr_ms = median(constr_t);
            rec.iter_ms = median(iter_t);
            rec.total_ms = median(total_t);

            if (layout == Layout::AoS && form == IterationForm::B &&
                strategy == UpdateStrategy::TwoPhase && backend == Backend::Serial)
              baseline_total = rec.total_ms;
            records.push_back(std::move(rec));
          }
        }
      }
    }

    for (size_t i = first_of_size; i < records.size(); ++i)
      records[i].speedup = records[i].total_ms > 0.0 ? baseline_total / records[i].total_ms : 1.0;
  }
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out =
      "size,layout,form,strategy,backend,workers,iterations,init_ms,topo_ms,constr_ms,"
      "iter_ms,total_ms,min_alpha_before,min_alpha_after,mean_alpha_before,mean_alpha_after,"
      "speedup\n";
  for (const BenchRecord& r : records) {
    out += std::to_string(r.size);
    out += ',';
    out += to_string(r.layout);
    out += ',';
    out += to_string(r.form);
    out += ',';
    out += to_string(r.strategy);
    out += ',';
    out += to_string(r.backend);
    out += ',';
    out += std::to_string(r.workers);
    out += ',';
    out += std::to_string(r.iterations);
    for (double v : {r.init_ms, r.topo_ms, r.constr_ms, r.iter_ms, r.total_ms,
                     r.min_alpha_before, r.min_alpha_after, r.mean_alpha_before,
                     r.mean_alpha_after, r.speedup}) {
      out += ',';
      out += fmt(v);
    }
    out += '\n';
  }
  return out;
}

std::string bench_json(const BenchOptions& options, const std::vector<BenchRecord>& records) {
  nlohmann::json j;
  j["sizes"] = options.sizes;
  j["repeats"] = options.repeats;
  j["seed"] = options.seed;
  j["max_iters"] = options.max_iters;
  j["move_tol"] = options.move_tol;
  j["records"] = nlohmann::json::array();
  for (const BenchRecord& r : records) {
    j["records"].push_back({{"size", r.size},
                            {"layout", to_string(r.layout)},
                            {"form", to_string(r.form)},
                            {"strategy", to_string(r.strategy)},
                            {"backend", to_string(r.backend)},
                            {"workers", r.workers},
                            {"iterations", r.iterations},
                            {"init_ms", r.init_ms},
                            {"topo_ms", r.topo_ms},
                            {"constr_ms", r.constr_ms},
                            {"iter_ms", r.iter_ms},
                            {"total_ms", r.total_ms},
                            {"min_alpha_before", r.min_alpha_before},
                            {"min_alpha_after", r.min_alpha_after},
                            {"mean_alpha_before", r.mean_alpha_before},
                            {"mean_alpha_after", r.mean_alpha_after},
                            {"speedup", r.speedup},
                            {"accepted_per_pass", r.accepted_per_pass}});
  }
  return j.dump(2);
}

}  // namespace trismooth
