#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trismooth/bench.hpp"
#include "trismooth/io.hpp"
#include "trismooth/meshgen.hpp"
#include "trismooth/quality.hpp"
#include "trismooth/smoothing.hpp"
#include "trismooth/topology.hpp"

namespace {

using namespace trismooth;

Layout parse_layout(const std::string& s) {
  if (s == "aos") return Layout::AoS;
  if (s == "soa") return Layout::SoA;
  throw CLI::ValidationError("--layout must be aos or soa");
}

IterationForm parse_form(const std::string& s) {
  if (s == "a") return IterationForm::A;
  if (s == "b") return IterationForm::B;
  throw CLI::ValidationError("--form must be a or b");
}

UpdateStrategy parse_strategy(const std::string& s) {
  if (s == "fused") return UpdateStrategy::Fused;
  if (s == "twophase") return UpdateStrategy::TwoPhase;
  throw CLI::ValidationError("--strategy must be fused or twophase");
}

Backend parse_backend(const std::string& s) {
  if (s == "serial") return Backend::Serial;
  if (s == "parallel") return Backend::Parallel;
  throw CLI::ValidationError("--backend must be serial or parallel");
}

// "1k" → 1000, "10K" → 10000, "2500" → 2500
int parse_size(std::string s) {
  int mult = 1;
  if (!s.empty() && (s.back() == 'k' || s.back() == 'K')) {
    mult = 1000;
    s.pop_back();
  }
  size_t used = 0;
  const int base = std::stoi(s, &used);
  if (used != s.size() || base <= 0) throw CLI::ValidationError("bad size '" + s + "'");
  return base * mult;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct GenArgs {
  std::string kind = "delaunay";
  int n = 1000;
  int rows = 10, cols = 10;
  double perturb = 0.3;
  uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  MeshSource src;
  if (a.kind == "delaunay") {
    GenSpec spec;
    spec.kind = GenKind::DelaunayRandom;
    spec.n_points = a.n;
    spec.seed = a.seed;
    src = generate(spec);
  } else if (a.kind == "grid") {
    src = perturbed_grid(a.rows, a.cols, a.perturb, a.seed);
  } else {
    throw CLI::ValidationError("--kind must be delaunay or grid");
  }
  const Mesh mesh = build_mesh(src.points, src.triangles, Layout::AoS);
  write_mesh_files(mesh, a.out);
  std::cout << "wrote " << a.out << ".node and " << a.out << ".ele: "
            << mesh.vertex_count() << " vertices, "
            << mesh.triangle_count() << " triangles\n";
  return 0;
}

struct SmoothArgs {
  std::string node, ele, out;
  std::string layout = "aos", form = "b", strategy = "twophase", backend = "serial";
  int workers = 0;
  int max_iters = 100;
  double move_tol = 1e-6;
  bool json = false;
};

nlohmann::json stats_json(const RunStats& s) {
  return {{"iterations", s.iterations},
          {"stop", to_string(s.stop)},
          {"init_ms", s.init_ms},
          {"topo_ms", s.topo_ms},
          {"constr_ms", s.constr_ms},
          {"iter_ms", s.iter_ms},
          {"total_ms", s.total_ms},
          {"min_alpha_before", s.min_alpha_before},
          {"min_alpha_after", s.min_alpha_after},
          {"mean_alpha_before", s.mean_alpha_before},
          {"mean_alpha_after", s.mean_alpha_after},
          {"accepted_per_pass", s.accepted_per_pass},
          {"max_disp_per_pass", s.max_disp_per_pass}};
}

int cmd_smooth(const SmoothArgs& a) {
  Mesh mesh = read_mesh_files(a.node, a.ele, parse_layout(a.layout));
  SmoothConfig cfg;
  cfg.form = parse_form(a.form);
  cfg.strategy = parse_strategy(a.strategy);
  cfg.backend = parse_backend(a.backend);
  cfg.workers = cfg.backend == Backend::Parallel ? resolve_workers(a.workers) : 1;
  cfg.max_iters = a.max_iters;
  cfg.move_tol = a.move_tol;

  const RunStats stats = smooth(mesh, cfg);
  write_mesh_files(mesh, a.out);

  if (a.json) {
    nlohmann::json j = stats_json(stats);
    j["output"] = a.out;
    std::cout << j.dump(2) << '\n';
  } else {
    std::printf("%d iterations (%s)\n", stats.iterations, to_string(stats.stop));
    std::printf("phases ms: init %.3f  topology %.3f  constraints %.3f  iterate %.3f  total %.3f\n",
                stats.init_ms, stats.topo_ms, stats.constr_ms, stats.iter_ms, stats.total_ms);
    std::printf("min alpha:  %.6f -> %.6f\n", stats.min_alpha_before, stats.min_alpha_after);
    std::printf("mean alpha: %.6f -> %.6f\n", stats.mean_alpha_before, stats.mean_alpha_after);
  }
  return 0;
}

struct QualityArgs {
  std::string node, ele;
  bool json = false;
};

int cmd_quality(const QualityArgs& a) {
  Mesh mesh = read_mesh_files(a.node, a.ele, Layout::AoS);
  init_flags(mesh);
  compute_all_qualities(mesh);
  const Adjacency adj = find_neighbors(mesh);
  determine_constraints(mesh, adj);

  const int nt = mesh.triangle_count();
  const int nv = mesh.vertex_count();
  std::vector<int> bins(20, 0);
  double lo = 2.0, hi = -2.0, sum = 0.0;
  int non_positive = 0;
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < nt; ++t) {
      const double q = m.tri_quality(t);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      sum += q;
      if (q <= 0.0) ++non_positive;
      int b = static_cast<int>((q + 1.0) * 10.0);  // 20 bins over [-1, 1]
      if (b < 0) b = 0;
      if (b > 19) b = 19;
      ++bins[b];
    }
  });
  int boundary = 0;
  mesh.visit([&](const auto& m) {
    for (int v = 0; v < nv; ++v) boundary += m.is_boundary(v) ? 1 : 0;
  });
  const int bad_edges = non_manifold_edge_count(mesh);

  if (a.json) {
    nlohmann::json j = {{"triangles", nt},
                        {"vertices", nv},
                        {"min_alpha", lo},
                        {"mean_alpha", sum / nt},
                        {"max_alpha", hi},
                        {"non_positive", non_positive},
                        {"boundary_vertices", boundary},
                        {"interior_vertices", nv - boundary},
                        {"non_manifold_edges", bad_edges},
                        {"histogram_bins", bins}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  std::printf("%d vertices (%d boundary, %d interior), %d triangles\n", nv, boundary,
              nv - boundary, nt);
  std::printf("alpha min %.6f  mean %.6f  max %.6f\n", lo, sum / nt, hi);
  std::printf("non-positive alpha: %d\n", non_positive);
  if (bad_edges > 0) std::printf("non-manifold edges: %d\n", bad_edges);
  std::printf("histogram over [-1,1], bin width 0.1:\n");
  for (int b = 0; b < 20; ++b) {
    std::printf("  [%+.1f,%+.1f%c %8d\n", -1.0 + 0.1 * b, -1.0 + 0.1 * (b + 1),
                b == 19 ? ']' : ')', bins[b]);
  }
  return 0;
}

struct BenchArgs {
  std::string sizes = "1k,5k,10k,50k,100k";
  int repeats = 5;
  int workers = 0;
  uint64_t seed = 42;
  int max_iters = 100;
  double move_tol = 1e-6;
  std::string csv_out, json_out;
};

int cmd_bench(const BenchArgs& a) {
  BenchOptions opts;
  opts.sizes.clear();
  std::string tok;
  for (size_t i = 0; i <= a.sizes.size(); ++i) {
    if (i == a.sizes.size() || a.sizes[i] == ',') {
      if (!tok.empty()) opts.sizes.push_back(parse_size(tok));
      tok.clear();
    } else {
      tok += a.sizes[i];
    }
  }
  if (opts.sizes.empty()) throw CLI::ValidationError("--sizes is empty");
  opts.repeats = a.repeats;
  opts.workers = a.workers;
  opts.seed = a.seed;
  opts.max_iters = a.max_iters;
  opts.move_tol = a.move_tol;

  const std::vector<BenchRecord> records = run_bench(opts);
  const std::string csv = bench_csv(records);
  if (!a.csv_out.empty())
    write_text_file(a.csv_out, csv);
  else
    std::cout << csv;
  if (!a.json_out.empty()) write_text_file(a.json_out, bench_json(opts, records));
  std::cerr << records.size() << " cells done\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart Laplacian smoothing of planar triangular meshes"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "generate a mesh fixture (.node/.ele)");
  g->add_option("--kind", gen.kind, "delaunay | grid")->capture_default_str();
  g->add_option("--n", gen.n, "point count (delaunay)")->capture_default_str();
  g->add_option("--rows", gen.rows, "lattice rows (grid)")->capture_default_str();
  g->add_option("--cols", gen.cols, "lattice cols (grid)")->capture_default_str();
  g->add_option("--perturb", gen.perturb, "interior jitter, fraction of cell (grid)")
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  g->add_option("-o,--out", gen.out, "output prefix")->required();

  SmoothArgs sm;
  CLI::App* s = app.add_subcommand("smooth", "smart Laplacian smoothing");
  s->add_option("node", sm.node, ".node file")->required();
  s->add_option("ele", sm.ele, ".ele file")->required();
  s->add_option("--layout", sm.layout, "aos | soa")->capture_default_str();
  s->add_option("--form", sm.form, "a (Jacobi) | b (Gauss-Seidel)")->capture_default_str();
  s->add_option("--strategy", sm.strategy, "fused | twophase")->capture_default_str();
  s->add_option("--backend", sm.backend, "serial | parallel")->capture_default_str();
  s->add_option("--workers", sm.workers, "parallel worker count (0 = hardware)")
      ->capture_default_str();
  s->add_option("--max-iters", sm.max_iters, "pass cap")->capture_default_str();
  s->add_option("--move-tol", sm.move_tol, "stop displacement, fraction of bbox diagonal")
      ->capture_default_str();
  s->add_flag("--json", sm.json, "print stats as JSON");
  s->add_option("-o,--out", sm.out, "output prefix")->required();

  QualityArgs q;
  CLI::App* qc = app.add_subcommand("quality", "mesh quality audit");
  qc->add_option("node", q.node, ".node file")->required();
  qc->add_option("ele", q.ele, ".ele file")->required();
  qc->add_flag("--json", q.json, "print report as JSON");

  BenchArgs b;
  CLI::App* bc = app.add_subcommand("bench", "layout x form x strategy x backend matrix");
  bc->add_option("--sizes", b.sizes, "comma list, k-suffix ok")->capture_default_str();
  bc->add_option("--repeats", b.repeats, "timed runs per cell")->capture_default_str();
  bc->add_option("--workers", b.workers, "parallel worker count (0 = hardware)")
      ->capture_default_str();
  bc->add_option("--seed", b.seed, "fixture seed")->capture_default_str();
  bc->add_option("--max-iters", b.max_iters, "pass cap per run")->capture_default_str();
  bc->add_option("--move-tol", b.move_tol, "stop displacement")->capture_default_str();
  bc->add_option("-o,--csv", b.csv_out, "CSV path (default: stdout)");
  bc->add_option("--json", b.json_out, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (s->parsed()) return cmd_smooth(sm);
    if (qc->parsed()) return cmd_quality(q);
    if (bc->parsed()) return cmd_bench(b);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
