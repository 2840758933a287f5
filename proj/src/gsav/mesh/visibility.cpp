#include "gsav/mesh/visibility.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::mesh {

bool face_visibility(const MatX3& world_vertices, const Camera& camera, int face_center_idx,
                     const std::vector<int>& eye_mid_idxs) {
  require(face_center_idx >= 0 && face_center_idx < world_vertices.rows(), ErrorKind::Dimension,
          "face center index out of range");
  require(!eye_mid_idxs.empty(), ErrorKind::Dimension, "eye index list is empty");

  Vec3 face_center = camera.to_camera(world_vertices.row(face_center_idx));
  Vec3 eye_mid = Vec3::Zero();
  for (int idx : eye_mid_idxs) {
    require(idx >= 0 && idx < world_vertices.rows(), ErrorKind::Dimension,
            "eye index out of range");
    eye_mid += camera.to_camera(world_vertices.row(idx));
  }
  eye_mid /= static_cast<double>(eye_mid_idxs.size());

  Vec2 u(eye_mid.x() - face_center.x(), eye_mid.z() - face_center.z());
  Vec2 w(face_center.x(), face_center.z());
  constexpr double kMinNorm = 1e-12;
  if (u.norm() < kMinNorm || w.norm() < kMinNorm) return false;
  u.normalize();
  w.normalize();
  const double threshold = std::cos(135.0 * M_PI / 180.0);
  return u.dot(w) < threshold;
}

}  // namespace gsav::mesh
