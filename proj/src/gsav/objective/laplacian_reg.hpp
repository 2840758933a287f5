#pragma once

#include "gsav/core/types.hpp"
#include "gsav/mesh/topology.hpp"

namespace gsav::objective {

struct LapRegResult {
  double value = 0.0;
  MatX d_deformed;
  MatX d_reference;  // = -d_deformed chain for position targets
};

// Mean squared difference of umbrella Laplacians:
//   mean over N*k entries of (L(deformed) - target_laplacian)^2.
LapRegResult laplacian_reg(const MatX& deformed, const MatX& target_laplacian,
                           const mesh::MeshAdjacency& adj);

// Position flavor: the target is the Laplacian of the canonical mesh.
LapRegResult laplacian_reg_positions(const MatX& deformed, const MatX& canonical,
                                     const mesh::MeshAdjacency& adj);

// Scale/color flavor: zero-Laplacian target (local smoothness).
LapRegResult laplacian_reg_smooth(const MatX& field, const mesh::MeshAdjacency& adj);

}  // namespace gsav::objective
