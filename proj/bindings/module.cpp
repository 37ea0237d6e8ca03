#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trismooth/io.hpp"
#include "trismooth/meshgen.hpp"
#include "trismooth/quality.hpp"
#include "trismooth/smoothing.hpp"
#include "trismooth/topology.hpp"

namespace py = pybind11;
using namespace trismooth;

namespace {

Layout layout_of(const std::string& s) {
  if (s == "aos") return Layout::AoS;
  if (s == "soa") return Layout::SoA;
  throw std::invalid_argument("layout must be 'aos' or 'soa'");
}

IterationForm form_of(const std::string& s) {
  if (s == "a") return IterationForm::A;
  if (s == "b") return IterationForm::B;
  throw std::invalid_argument("form must be 'a' or 'b'");
}

UpdateStrategy strategy_of(const std::string& s) {
  if (s == "fused") return UpdateStrategy::Fused;
  if (s == "twophase") return UpdateStrategy::TwoPhase;
  throw std::invalid_argument("strategy must be 'fused' or 'twophase'");
}

Backend backend_of(const std::string& s) {
  if (s == "serial") return Backend::Serial;
  if (s == "parallel") return Backend::Parallel;
  throw std::invalid_argument("backend must be 'serial' or 'parallel'");
}

Mesh from_source(const MeshSource& src, const std::string& layout) {
  return build_mesh(src.points, src.triangles, layout_of(layout));
}

}  // namespace

PYBIND11_MODULE(_trismooth, m) {
  m.doc() = "Smart Laplacian smoothing of planar triangular meshes";

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("vertex_count", &Mesh::vertex_count)
      .def_property_readonly("triangle_count", &Mesh::triangle_count)
      .def_property_readonly("layout",
                             [](const Mesh& mesh) { return std::string(to_string(mesh.layout())); })
      .def("points",
           [](const Mesh& mesh) {
             std::vector<std::pair<double, double>> out(mesh.vertex_count());
             mesh.visit([&](const auto& s) {
               for (int v = 0; v < s.vertex_count(); ++v) {
                 const Point p = s.position(v);
                 out[v] = {p.x, p.y};
               }
             });
             return out;
           })
      .def("triangles",
           [](const Mesh& mesh) {
             std::vector<std::array<int, 3>> out(mesh.triangle_count());
             mesh.visit([&](const auto& s) {
               for (int t = 0; t < s.triangle_count(); ++t) out[t] = s.tri(t);
             });
             return out;
           })
      .def("boundary",
           [](const Mesh& mesh) {
             std::vector<bool> out(mesh.vertex_count());
             mesh.visit([&](const auto& s) {
               for (int v = 0; v < s.vertex_count(); ++v) out[v] = s.is_boundary(v);
             });
             return out;
           })
      .def("__repr__", [](const Mesh& mesh) {
        return "Mesh(" + std::to_string(mesh.vertex_count()) + " vertices, " +
               std::to_string(mesh.triangle_count()) + " triangles, " +
               to_string(mesh.layout()) + ")";
      });

  m.def(
      "triangle_alpha",
      [](std::pair<double, double> p1, std::pair<double, double> p2,
         std::pair<double, double> p3) {
        return triangle_alpha({p1.first, p1.second}, {p2.first, p2.second},
                              {p3.first, p3.second});
      },
      py::arg("p1"), py::arg("p2"), py::arg("p3"),
      "Normalized shape quality: 1 equilateral, 0 degenerate, < 0 inverted.");

  m.def(
      "build_mesh",
      [](const std::vector<std::pair<double, double>>& points,
         const std::vector<std::array<int, 3>>& triangles, const std::string& layout) {
        std::vector<Point> pts(points.size());
        for (size_t i = 0; i < points.size(); ++i) pts[i] = {points[i].first, points[i].second};
        return build_mesh(pts, triangles, layout_of(layout));
      },
      py::arg("points"), py::arg("triangles"), py::arg("layout") = "aos");

  m.def(
      "generate_delaunay",
      [](int n, uint64_t seed, const std::string& layout) {
        GenSpec spec;
        spec.kind = GenKind::DelaunayRandom;
        spec.n_points = n;
        spec.seed = seed;
        return from_source(generate(spec), layout);
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("layout") = "aos",
      "Seeded uniform points in the unit square, Delaunay-triangulated.");

  m.def(
      "generate_grid",
      [](int rows, int cols, double perturbation, uint64_t seed, const std::string& layout) {
        return from_source(perturbed_grid(rows, cols, perturbation, seed), layout);
      },
      py::arg("rows"), py::arg("cols"), py::arg("perturbation") = 0.3, py::arg("seed") = 1,
      py::arg("layout") = "aos");

  m.def(
      "smooth",
      [](Mesh& mesh, const std::string& form, const std::string& strategy,
         const std::string& backend, int workers, int max_iters, double move_tol) {
        SmoothConfig cfg;
        cfg.form = form_of(form);
        cfg.strategy = strategy_of(strategy);
        cfg.backend = backend_of(backend);
        cfg.workers = workers;
        cfg.max_iters = max_iters;
        cfg.move_tol = move_tol;
        const RunStats s = smooth(mesh, cfg);
        py::dict d;
        d["iterations"] = s.iterations;
        d["stop"] = std::string(to_string(s.stop));
        d["init_ms"] = s.init_ms;
        d["topo_ms"] = s.topo_ms;
        d["constr_ms"] = s.constr_ms;
        d["iter_ms"] = s.iter_ms;
        d["total_ms"] = s.total_ms;
        d["min_alpha_before"] = s.min_alpha_before;
        d["min_alpha_after"] = s.min_alpha_after;
        d["mean_alpha_before"] = s.mean_alpha_before;
        d["mean_alpha_after"] = s.mean_alpha_after;
        d["accepted_per_pass"] = s.accepted_per_pass;
        return d;
      },
      py::arg("mesh"), py::arg("form") = "b", py::arg("strategy") = "twophase",
      py::arg("backend") = "serial", py::arg("workers") = 1, py::arg("max_iters") = 100,
      py::arg("move_tol") = 1e-6, "Smooth in place; returns run statistics.");

  m.def(
      "quality_summary",
      [](Mesh& mesh) {
        init_flags(mesh);
        compute_all_qualities(mesh);
        const Adjacency adj = find_neighbors(mesh);
        determine_constraints(mesh, adj);
        double lo = 2.0, hi = -2.0, sum = 0.0;
        int non_positive = 0, boundary = 0;
        mesh.visit([&](const auto& s) {
          for (int t = 0; t < s.triangle_count(); ++t) {
            const double q = s.tri_quality(t);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            sum += q;
            if (q <= 0.0) ++non_positive;
          }
          for (int v = 0; v < s.vertex_count(); ++v) boundary += s.is_boundary(v) ? 1 : 0;
        });
        py::dict d;
        d["min_alpha"] = lo;
        d["mean_alpha"] = sum / mesh.triangle_count();
        d["max_alpha"] = hi;
        d["non_positive"] = non_positive;
        d["boundary_vertices"] = boundary;
        d["interior_vertices"] = mesh.vertex_count() - boundary;
        return d;
      },
      py::arg("mesh"));

  m.def(
      "read_mesh",
      [](const std::string& node, const std::string& ele, const std::string& layout) {
        return read_mesh_files(node, ele, layout_of(layout));
      },
      py::arg("node"), py::arg("ele"), py::arg("layout") = "aos");

  m.def(
      "write_mesh",
      [](const Mesh& mesh, const std::string& prefix) { write_mesh_files(mesh, prefix); },
      py::arg("mesh"), py::arg("prefix"), "Writes <prefix>.node and <prefix>.ele.");

  m.def(
      "convert_layout",
      [](const Mesh& mesh, const std::string& layout) {
        return convert_layout(mesh, layout_of(layout));
      },
      py::arg("mesh"), py::arg("layout"));
}
