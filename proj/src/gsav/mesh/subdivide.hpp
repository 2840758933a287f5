#pragma once

#include <array>
#include <vector>

#include "gsav/core/types.hpp"
#include "gsav/model/skin_weights.hpp"

namespace gsav::mesh {

// Midpoint subdivision: one new vertex per unique edge, each triangle split
// into 4. Vertices are not repositioned. The result can upsample any
// per-vertex asset by the same edge-midpoint averaging, so blendshape bases,
// skinning weights and labels stay consistent with the refined topology.
struct Subdivision {
  MatX3 vertices;
  FaceMat faces;
  int base_vertex_count = 0;
  // parents of vertex (base_vertex_count + i)
  std::vector<std::array<int, 2>> edge_parents;

  int vertex_count() const { return static_cast<int>(vertices.rows()); }

  // Per-vertex float asset (V x k) -> (V' x k), midpoint rows averaged.
  MatX upsample(const MatX& asset) const;
  // Adjoint of upsample (for backpropagation through positions).
  MatX upsample_adjoint(const MatX& d_upsampled) const;

  // Midpoint label rule: face dominates hands dominates body.
  std::vector<PartLabel> upsample_labels(const std::vector<PartLabel>& labels) const;

  // Sparse skinning weights: midpoint rows are the average of the endpoint
  // rows, re-capped to 4 influences and renormalized.
  model::SkinWeights upsample_weights(const model::SkinWeights& w) const;

  // Per-face-corner attribute (3F x k) -> (3F' x k); child corners at edge
  // midpoints average the two adjacent corner rows of the parent face.
  MatX upsample_corners(const MatX& corner_attr) const;
};

// Throws format-error when an edge is shared by more than two faces.
Subdivision subdivide(const MatX3& vertices, const FaceMat& faces);

// Composition of k subdivision levels with flat helpers over the full chain.
// A chain with zero levels is the identity.
struct SubdivisionChain {
  MatX3 base_vertices;
  FaceMat base_faces;
  std::vector<Subdivision> levels;

  const MatX3& vertices() const { return levels.empty() ? base_vertices : levels.back().vertices; }
  const FaceMat& faces() const { return levels.empty() ? base_faces : levels.back().faces; }
  int vertex_count() const { return static_cast<int>(vertices().rows()); }

  MatX upsample(const MatX& asset) const;
  MatX upsample_adjoint(const MatX& d) const;
  std::vector<PartLabel> upsample_labels(std::vector<PartLabel> labels) const;
  model::SkinWeights upsample_weights(model::SkinWeights w) const;
  MatX upsample_corners(MatX attr) const;
};

SubdivisionChain subdivide_times(const MatX3& vertices, const FaceMat& faces, int times);

}  // namespace gsav::mesh
