#pragma once

#include <vector>

#include "trismooth/mesh.hpp"

namespace trismooth {

class ThreadPool;

/// Per-vertex adjacency as recorded from triangle traversal. The raw list
/// keeps duplicates (two entries per incident triangle visit); the unique
/// list is sorted ascending, with per-neighbor occurrence counts alongside.
struct Adjacency {
  Csr raw;                        // neighbor ids with duplicates, triangle order
  Csr unique;                     // deduplicated neighbor ids, ascending
  std::vector<int> multiplicity;  // aligned with unique.values: occurrences in raw
  Csr incident;                   // incident triangle ids, ascending
};

/// Builds adjacency from triangle connectivity and installs the deduplicated
/// neighbor and incident lists into the mesh. Single-threaded: the raw lists'
/// recording order is part of the contract.
Adjacency find_neighbors(Mesh& mesh);

/// Flags a vertex as boundary when any raw neighbor was recorded a number of
/// times other than two, or when it has no neighbors at all (isolated
/// vertices stay pinned). One independent write per vertex; a pool, if given,
/// splits the vertex range into contiguous chunks.
void determine_constraints(Mesh& mesh, const Adjacency& adj, ThreadPool* pool = nullptr);

/// Independent boundary classification by edge sharing: a vertex is boundary
/// iff it lies on an edge belonging to exactly one triangle.
std::vector<bool> boundary_oracle(const Mesh& mesh);

/// Number of undirected edges shared by three or more triangles.
int non_manifold_edge_count(const Mesh& mesh);

}  // namespace trismooth
