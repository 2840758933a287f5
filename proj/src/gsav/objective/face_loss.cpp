#include "gsav/objective/face_loss.hpp"

#include "gsav/core/error.hpp"
#include "gsav/splat/mesh_raster.hpp"

namespace gsav::objective {

FaceLossResult face_loss(const MatX3& face_vertices, const FaceMat& face_faces,
                         const MatX2& face_uv, const Image& mean_texture, const Image& target,
                         const Camera& camera, bool visible) {
  FaceLossResult out;
  out.d_vertices = MatX3::Zero(face_vertices.rows(), 3);
  if (!visible) return out;
  require(mean_texture.width > 0 && mean_texture.height > 0, ErrorKind::Dimension,
          "face loss requires a prepared mean texture");
  require(target.width == camera.width && target.height == camera.height && target.channels == 3,
          ErrorKind::Dimension, "target image does not match camera dimensions");

  splat::MeshRasterCache cache;
  splat::MeshRenderOutput render =
      splat::render_mesh(face_vertices, face_faces, face_uv, mean_texture, camera, &cache);

  int covered = 0;
  for (int y = 0; y < camera.height; ++y)
    for (int x = 0; x < camera.width; ++x)
      if (render.mask.at(y, x, 0) > 0.5) covered++;
  out.covered_pixels = covered;
  if (covered == 0) return out;

  const double inv = 1.0 / (static_cast<double>(covered) * 3.0);
  Image d_rgb(camera.width, camera.height, 3);
  for (int y = 0; y < camera.height; ++y)
    for (int x = 0; x < camera.width; ++x) {
      if (render.mask.at(y, x, 0) <= 0.5) continue;
      for (int c = 0; c < 3; ++c) {
        double d = render.rgb.at(y, x, c) - target.at(y, x, c);
        out.value += std::abs(d) * inv;
        d_rgb.at(y, x, c) = (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0)) * inv;
      }
    }
  out.d_vertices = splat::render_mesh_backward(face_vertices, face_faces, face_uv, mean_texture,
                                               camera, cache, d_rgb);
  return out;
}

}  // namespace gsav::objective
