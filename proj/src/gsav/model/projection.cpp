#include "gsav/model/projection.hpp"

namespace gsav::model {

Projection project_points(const MatX3& points, const Camera& camera) {
  const Eigen::Index N = points.rows();
  Projection out;
  out.pixels.setZero(N, 2);
  out.depth.setZero(N);
  out.valid.assign(static_cast<size_t>(N), 0);
  for (Eigen::Index i = 0; i < N; ++i) {
    Vec3 pc = camera.to_camera(points.row(i));
    out.depth[i] = pc.z();
    if (pc.z() <= kProjectionEps) continue;
    out.valid[static_cast<size_t>(i)] = 1;
    out.pixels(i, 0) = camera.fx * pc.x() / pc.z() + camera.cx;
    out.pixels(i, 1) = camera.fy * pc.y() / pc.z() + camera.cy;
  }
  return out;
}

MatX3 project_points_backward(const MatX3& points, const Camera& camera, const Projection& proj,
                              const MatX2& d_pixels) {
  MatX3 d_points = MatX3::Zero(points.rows(), 3);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (!proj.valid[static_cast<size_t>(i)]) continue;
    Vec3 pc = camera.to_camera(points.row(i));
    double inv_z = 1.0 / pc.z();
    // du/d(pc), dv/d(pc)
    Vec3 du(camera.fx * inv_z, 0.0, -camera.fx * pc.x() * inv_z * inv_z);
    Vec3 dv(0.0, camera.fy * inv_z, -camera.fy * pc.y() * inv_z * inv_z);
    Vec3 d_pc = d_pixels(i, 0) * du + d_pixels(i, 1) * dv;
    d_points.row(i) = (camera.rotation.transpose() * d_pc).transpose();
  }
  return d_points;
}

}  // namespace gsav::model
