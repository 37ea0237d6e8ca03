#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trismooth/mesh.hpp"

namespace trismooth {

/// splitmix64: tiny seedable generator with identical output on every
/// platform, so fixtures are reproducible byte for byte.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

enum class GenKind { DelaunayRandom, PerturbedGrid };

struct GenSpec {
  GenKind kind = GenKind::DelaunayRandom;
  int n_points = 0;  // DelaunayRandom
  int rows = 0;      // PerturbedGrid
  int cols = 0;
  double perturbation = 0.0;  // fraction of cell size, [0, 0.49]
  uint64_t seed = 0;
};

/// Points + connectivity ready for build_mesh, before any layout choice.
struct MeshSource {
  std::vector<Point> points;
  std::vector<std::array<int, 3>> triangles;
};

/// n_points ≥ 3 uniform points in [0,1]², deterministic from the seed.
/// A draw landing within 1e-12 (L∞) of an earlier point is resampled.
std::vector<Point> generate_points(const GenSpec& spec);

/// Bowyer–Watson Delaunay triangulation of distinct points. Triangles come
/// out counter-clockwise, canonicalized (smallest vertex first) and
/// lexicographically sorted. Throws Error when all points are collinear.
std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Point>& points);

/// rows×cols lattice on the unit square, interior vertices displaced
/// uniformly within ±perturbation×cell size, cells split into two triangles
/// with a consistent diagonal. Boundary lattice vertices never move.
MeshSource perturbed_grid(int rows, int cols, double perturbation, uint64_t seed);

/// Dispatch on spec.kind; validates the spec.
MeshSource generate(const GenSpec& spec);

}  // namespace trismooth
