#pragma once

#include <array>

#include "gsav/core/types.hpp"

namespace gsav::field {

// Three axis-aligned feature planes (xy, xz, yz), each C x H x W, zero
// initialized. A per-plane bounding box maps world coordinates of the
// positional-encoding mesh to [0,1]^2; querying outside the box is an error.
struct Triplane {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::array<VecX, 3> planes;  // each C*H*W, index ((c*H)+y)*W + x
  std::array<VecX, 3> grads;
  std::array<Vec2, 3> lo;  // per-plane box
  std::array<Vec2, 3> hi;

  // Axis pairs per plane: xy, xz, yz.
  static constexpr int kAxes[3][2] = {{0, 1}, {0, 2}, {1, 2}};

  // Zero-initialized planes with the box set to the axis-aligned bounds of
  // `points`, expanded by `margin` (fraction of extent) per side.
  static Triplane zeros(int channels, int height, int width, const MatX3& points, double margin);

  // Concatenated bilinear features, one column per point (3C x N).
  MatX sample(const MatX3& points) const;
  // Accumulates bilinear-adjoint gradients into the touched texels.
  void sample_backward(const MatX3& points, const MatX& d_features);

  void zero_grad();
  size_t param_count() const { return static_cast<size_t>(channels) * height * width * 3; }
};

}  // namespace gsav::field
