#pragma once

#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::mesh {

// Face visibility test in the camera frame's xz-plane: with
// u = normalized(eye-midpoint - face-center) and w = normalized(face-center -
// camera origin), the face is visible iff dot(u, w) < cos(135 deg) (strict).
// Degenerate zero-length vectors are not visible.
bool face_visibility(const MatX3& world_vertices, const Camera& camera, int face_center_idx,
                     const std::vector<int>& eye_mid_idxs);

}  // namespace gsav::mesh
