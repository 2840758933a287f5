#pragma once

#include "gsav/core/types.hpp"
#include "gsav/mesh/topology.hpp"

namespace gsav::mesh {

// Uniform (umbrella) Laplacian: delta_i = x_i - mean of 1-ring neighbors.
// Isolated vertices get a zero row.
MatX umbrella_laplacian(const MatX& field, const MeshAdjacency& adj);

// Transpose operator L^T applied to a field, for reverse-mode gradients.
MatX umbrella_laplacian_transpose(const MatX& field, const MeshAdjacency& adj);

}  // namespace gsav::mesh
