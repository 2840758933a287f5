#include "gsav/field/triplane.hpp"

#include <sstream>

#include "gsav/core/error.hpp"

namespace gsav::field {

namespace {

struct Texel {
  int x0, y0, x1, y1;
  double wx, wy;  // fractional weights toward (x1, y1)
};

// Texel-center (align-corners) mapping of a normalized coordinate in [0,1].
inline void locate(double u, int extent, int& i0, int& i1, double& w) {
  double x = u * (extent - 1);
  i0 = static_cast<int>(std::floor(x));
  if (i0 >= extent - 1) i0 = extent - 2;
  if (i0 < 0) i0 = 0;
  i1 = i0 + 1;
  w = x - i0;
}

}  // namespace

Triplane Triplane::zeros(int channels, int height, int width, const MatX3& points, double margin) {
  require(channels > 0 && height > 1 && width > 1, ErrorKind::Dimension,
          "triplane needs channels > 0 and resolution > 1");
  require(points.rows() > 0, ErrorKind::Dimension, "triplane box needs at least one point");
  Triplane t;
  t.channels = channels;
  t.height = height;
  t.width = width;
  Vec3 lo3 = points.colwise().minCoeff();
  Vec3 hi3 = points.colwise().maxCoeff();
  for (int p = 0; p < 3; ++p) {
    for (int a = 0; a < 2; ++a) {
      int axis = kAxes[p][a];
      double extent = hi3[axis] - lo3[axis];
      if (extent <= 0.0) extent = 1e-6;
      t.lo[p][a] = lo3[axis] - margin * extent;
      t.hi[p][a] = hi3[axis] + margin * extent;
    }
    t.planes[p] = VecX::Zero(static_cast<Eigen::Index>(channels) * height * width);
    t.grads[p] = VecX::Zero(t.planes[p].size());
  }
  return t;
}

MatX Triplane::sample(const MatX3& points) const {
  const Eigen::Index N = points.rows();
  MatX out(3 * channels, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (int p = 0; p < 3; ++p) {
      double a0 = points(i, kAxes[p][0]);
      double a1 = points(i, kAxes[p][1]);
      double u = (a0 - lo[p][0]) / (hi[p][0] - lo[p][0]);
      double v = (a1 - lo[p][1]) / (hi[p][1] - lo[p][1]);
      if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
        std::ostringstream ss;
        ss << "query point " << i << " (" << points(i, 0) << ", " << points(i, 1) << ", "
           << points(i, 2) << ") lies outside the triplane bounding box of plane " << p;
        fail(ErrorKind::Numeric, ss.str());
      }
      int x0, x1, y0, y1;
      double wx, wy;
      locate(u, width, x0, x1, wx);
      locate(v, height, y0, y1, wy);
      const double w00 = (1 - wx) * (1 - wy), w10 = wx * (1 - wy);
      const double w01 = (1 - wx) * wy, w11 = wx * wy;
      const VecX& plane = planes[p];
      for (int c = 0; c < channels; ++c) {
        Eigen::Index base = static_cast<Eigen::Index>(c) * height;
        double f = w00 * plane[(base + y0) * width + x0] + w10 * plane[(base + y0) * width + x1] +
                   w01 * plane[(base + y1) * width + x0] + w11 * plane[(base + y1) * width + x1];
        out(p * channels + c, i) = f;
      }
    }
  }
  return out;
}

void Triplane::sample_backward(const MatX3& points, const MatX& d_features) {
  require(d_features.rows() == 3 * channels && d_features.cols() == points.rows(),
          ErrorKind::Dimension, "feature gradient shape mismatch");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (int p = 0; p < 3; ++p) {
      double a0 = points(i, kAxes[p][0]);
      double a1 = points(i, kAxes[p][1]);
      double u = (a0 - lo[p][0]) / (hi[p][0] - lo[p][0]);
      double v = (a1 - lo[p][1]) / (hi[p][1] - lo[p][1]);
      int x0, x1, y0, y1;
      double wx, wy;
      locate(u, width, x0, x1, wx);
      locate(v, height, y0, y1, wy);
      const double w00 = (1 - wx) * (1 - wy), w10 = wx * (1 - wy);
      const double w01 = (1 - wx) * wy, w11 = wx * wy;
      VecX& g = grads[p];
      for (int c = 0; c < channels; ++c) {
        double d = d_features(p * channels + c, i);
        if (d == 0.0) continue;
        Eigen::Index base = static_cast<Eigen::Index>(c) * height;
        g[(base + y0) * width + x0] += w00 * d;
        g[(base + y0) * width + x1] += w10 * d;
        g[(base + y1) * width + x0] += w01 * d;
        g[(base + y1) * width + x1] += w11 * d;
      }
    }
  }
}

void Triplane::zero_grad() {
  for (auto& g : grads) g.setZero();
}

}  // namespace gsav::field
