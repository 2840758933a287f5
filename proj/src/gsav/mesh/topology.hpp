#pragma once

#include <array>
#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::mesh {

// Undirected unique edges in first-seen face-scan order.
struct EdgeList {
  std::vector<std::array<int, 2>> edges;     // each sorted (lo, hi)
  std::vector<int> incident_faces;           // face count per edge
};

EdgeList build_edge_list(const FaceMat& faces, int vertex_count);

// CSR 1-ring adjacency over shared edges. Shareable read-only across threads.
struct MeshAdjacency {
  std::vector<int> offsets;    // size V+1
  std::vector<int> neighbors;  // sorted per vertex

  int vertex_count() const { return static_cast<int>(offsets.size()) - 1; }
  int degree(int v) const { return offsets[v + 1] - offsets[v]; }
  const int* begin(int v) const { return neighbors.data() + offsets[v]; }
  const int* end(int v) const { return neighbors.data() + offsets[v + 1]; }

  static MeshAdjacency build(const FaceMat& faces, int vertex_count);
};

}  // namespace gsav::mesh
