#pragma once

#include <vector>

#include "gsav/core/image.hpp"
#include "gsav/core/types.hpp"

namespace gsav::splat {

// Isotropic Gaussian cloud: rotation is implicitly identity and opacity one
// for every point. faces carries the shared mesh connectivity used for
// normals and Laplacians; it is not used to rasterize.
struct GaussianCloud {
  MatX3 positions;  // world, meters
  VecX log_scales;
  MatX3 colors;     // [0,1]
  FaceMat faces;    // may be empty

  Eigen::Index size() const { return positions.rows(); }
};

struct RenderConfig {
  int tile_size = 16;
  // Footprint truncation at the 3-sigma ellipse (q = 9/2); part of the weight
  // definition, shared by the tiled and brute-force paths.
  double truncation_q = 4.5;
  double weight_clamp = 0.99;
  double stop_transmittance = 1e-4;
  double near_plane = 1e-4;
  int workers = 1;
};

struct RenderOutput {
  Image rgb;            // H x W x 3
  Image alpha;          // H x W, sum of w_i T_i
  Image depth;          // H x W, composited camera z
  Image normal;         // H x W x 3, composited world normals
  Image transmittance;  // H x W, final T
};

// Per-gaussian screen-space footprint, precomputed once per render.
struct SplatPoint {
  int index;             // gaussian index (depth ties break on it)
  double X, Y, Z;        // camera-frame center
  double ux, uy;         // fx*X/Z, fy*Y/Z (principal-point relative)
  double sx, sy;         // per-axis sigma in pixels: exp(s)*f/z
  Vec3 color;
  Vec3 normal;
};

struct RenderCache {
  std::vector<SplatPoint> splats;            // depth sorted, culled
  std::vector<std::vector<int>> tile_bins;   // indices into splats
  int tiles_x = 0, tiles_y = 0;
  RenderConfig config;
};

struct RenderGrads {
  MatX3 d_positions;
  VecX d_log_scales;
  MatX3 d_colors;
};

// Tile-based forward rasterization: gaussians composite front-to-back in
// strict depth order with per-pixel weight w = exp(-q) clamped to <= 0.99,
// early-terminating when transmittance drops below 1e-4.
RenderOutput render_gaussians(const GaussianCloud& cloud, const Camera& camera,
                              const RenderConfig& config = {}, RenderCache* cache = nullptr);

// Exact reverse of the compositing sum; sort order is treated as constant.
RenderGrads render_gaussians_backward(const GaussianCloud& cloud, const Camera& camera,
                                      const RenderCache& cache, const Image& d_rgb,
                                      const Image& d_alpha);

// Test oracle: every gaussian evaluated at every pixel, no tiling.
RenderOutput brute_force_render(const GaussianCloud& cloud, const Camera& camera,
                                const RenderConfig& config = {});

}  // namespace gsav::splat
