#pragma once

#include <vector>

#include "gsav/core/types.hpp"
#include "gsav/model/skin_weights.hpp"

namespace gsav::mesh {

// Skinning weights for an upsampled mesh: body-labeled vertices copy the
// weights of their single nearest base vertex (Euclidean, canonical pose);
// hand/face-labeled vertices keep the subdivision-interpolated weights. All
// rows are renormalized.
model::SkinWeights transfer_skinning(const MatX3& upsampled_vertices,
                                     const std::vector<PartLabel>& part_labels,
                                     const MatX3& base_vertices,
                                     const model::SkinWeights& base_weights,
                                     const model::SkinWeights& interpolated_weights);

// Index of the nearest base vertex per query row (brute-force scan, ties
// broken by lower index).
std::vector<int> nearest_vertex(const MatX3& queries, const MatX3& base_vertices);

}  // namespace gsav::mesh
