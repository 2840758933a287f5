#pragma once

#include <vector>

#include "gsav/core/image.hpp"
#include "gsav/core/types.hpp"

namespace gsav::splat {

struct MeshRenderOutput {
  Image rgb;   // H x W x 3
  Image mask;  // H x W, 1 where covered
};

// Per-pixel raster record for the backward pass (coverage held fixed).
struct MeshRasterCache {
  std::vector<int> face;       // -1 where uncovered
  std::vector<double> bary;    // 3 per pixel
  int width = 0, height = 0;
};

// Z-buffered barycentric rasterization with bilinear texture lookup at the
// interpolated per-corner UV. Depth interpolates affinely in screen space;
// vertices behind the near plane reject the whole triangle.
MeshRenderOutput render_mesh(const MatX3& vertices, const FaceMat& faces, const MatX2& corner_uv,
                             const Image& texture, const Camera& camera,
                             MeshRasterCache* cache = nullptr);

// Gradients to vertex positions through barycentric coordinates and the UV
// chain; pixel-to-triangle coverage and the z-order are non-differentiable
// and held fixed.
MatX3 render_mesh_backward(const MatX3& vertices, const FaceMat& faces, const MatX2& corner_uv,
                           const Image& texture, const Camera& camera,
                           const MeshRasterCache& cache, const Image& d_rgb);

// Bilinear sample of a texture at uv in [0,1]^2 (clamped), plus the partial
// derivatives of each channel w.r.t. uv.
void sample_texture(const Image& texture, double u, double v, Vec3& color, Vec3& d_du, Vec3& d_dv);

}  // namespace gsav::splat
