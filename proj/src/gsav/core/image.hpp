#pragma once

#include <string>
#include <vector>

#include "gsav/core/types.hpp"

namespace gsav {

// Row-major floating point image with values nominally in [0,1].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c), data(static_cast<size_t>(w) * h * c, fill) {}

  double& at(int y, int x, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int y, int x, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
};

// 8-bit PNG I/O. Gray (1), RGB (3) and RGBA (4) are supported; values are
// clamped to [0,1] and rounded on write.
Image read_png(const std::string& path);
void write_png(const std::string& path, const Image& image);

}  // namespace gsav
