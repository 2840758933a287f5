#pragma once

#include "gsav/core/image.hpp"
#include "gsav/core/types.hpp"

namespace gsav::objective {

struct FaceLossResult {
  double value = 0.0;
  MatX3 d_vertices;  // gradients to face vertex positions only
  int covered_pixels = 0;
};

// Masked mean-L1 between the textured-mesh render of the face submesh and the
// target image over rendered face pixels. The texture stays frozen; only
// vertex positions receive gradients. Not-visible frames contribute exactly 0.
FaceLossResult face_loss(const MatX3& face_vertices, const FaceMat& face_faces,
                         const MatX2& face_uv, const Image& mean_texture, const Image& target,
                         const Camera& camera, bool visible);

}  // namespace gsav::objective
