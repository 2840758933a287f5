#pragma once

#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::model {

// Depth threshold below which a point cannot be projected.
constexpr double kProjectionEps = 1e-8;

struct Projection {
  MatX2 pixels;                       // garbage rows where invalid
  VecX depth;                         // camera-frame z
  std::vector<std::uint8_t> valid;    // z > kProjectionEps
};

Projection project_points(const MatX3& points, const Camera& camera);

// Gradient of pixels w.r.t. world points; invalid rows contribute nothing.
MatX3 project_points_backward(const MatX3& points, const Camera& camera, const Projection& proj,
                              const MatX2& d_pixels);

}  // namespace gsav::model
