#include "gsav/objective/image_loss.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::objective {

namespace {

std::vector<double> gaussian_window(int size, double sigma) {
  std::vector<double> w(static_cast<size_t>(size) * size);
  double half = (size - 1) / 2.0;
  double sum = 0.0;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      double dx = x - half, dy = y - half;
      double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      w[static_cast<size_t>(y) * size + x] = v;
      sum += v;
    }
  for (auto& v : w) v /= sum;
  return w;
}

struct WindowStats {
  double mx, my, sxx, syy, sxy;  // means and (co)variances
};

// a1 = 2 mx my + c1, a2 = 2 sxy + c2, b1 = mx^2 + my^2 + c1, b2 = sxx + syy + c2
inline double ssim_value(const WindowStats& s, double c1, double c2, double& a1, double& a2,
                         double& b1, double& b2) {
  a1 = 2.0 * s.mx * s.my + c1;
  a2 = 2.0 * s.sxy + c2;
  b1 = s.mx * s.mx + s.my * s.my + c1;
  b2 = s.sxx + s.syy + c2;
  return (a1 * a2) / (b1 * b2);
}

}  // namespace

ImageLossResult image_loss(const Image& rendered, const Image& target, const CropRect& crop,
                           double l1_weight, double ssim_weight, const SsimParams& params) {
  require(rendered.same_shape(target), ErrorKind::Dimension,
          "rendered/target image shapes differ");
  require(rendered.channels == 3, ErrorKind::Dimension, "image loss expects RGB images");
  require(!crop.empty(), ErrorKind::Dimension, "empty crop");
  require(crop.x0 >= 0 && crop.y0 >= 0 && crop.x1 <= rendered.width && crop.y1 <= rendered.height,
          ErrorKind::Dimension, "crop exceeds image bounds");

  ImageLossResult out;
  out.d_rendered = Image(rendered.width, rendered.height, 3);

  // L1 term.
  const double l1_count = static_cast<double>(crop.width()) * crop.height() * 3;
  double l1_sum = 0.0;
  for (int y = crop.y0; y < crop.y1; ++y)
    for (int x = crop.x0; x < crop.x1; ++x)
      for (int c = 0; c < 3; ++c) {
        double d = rendered.at(y, x, c) - target.at(y, x, c);
        l1_sum += std::abs(d);
        double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        out.d_rendered.at(y, x, c) = l1_weight * sign / l1_count;
      }
  out.l1 = l1_sum / l1_count;

  // SSIM term over valid window positions.
  const int win = params.window;
  const int vh = crop.height() - win + 1;
  const int vw = crop.width() - win + 1;
  if (vh > 0 && vw > 0 && ssim_weight != 0.0) {
    const auto g = gaussian_window(win, params.sigma);
    const double c1 = params.k1 * params.k1;
    const double c2 = params.k2 * params.k2;
    const double count = static_cast<double>(vh) * vw * 3;
    const double d_scale = -ssim_weight / count;  // d(total)/dS per position

    double ssim_sum = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (int wy = 0; wy < vh; ++wy) {
        for (int wx = 0; wx < vw; ++wx) {
          WindowStats st{};
          double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
          for (int ky = 0; ky < win; ++ky)
            for (int kx = 0; kx < win; ++kx) {
              double wgt = g[static_cast<size_t>(ky) * win + kx];
              double xv = rendered.at(crop.y0 + wy + ky, crop.x0 + wx + kx, c);
              double yv = target.at(crop.y0 + wy + ky, crop.x0 + wx + kx, c);
              sx += wgt * xv;
              sy += wgt * yv;
              sxx += wgt * xv * xv;
              syy += wgt * yv * yv;
              sxy += wgt * xv * yv;
            }
          st.mx = sx;
          st.my = sy;
          st.sxx = sxx - sx * sx;
          st.syy = syy - sy * sy;
          st.sxy = sxy - sx * sy;
          double a1, a2, b1, b2;
          double S = ssim_value(st, c1, c2, a1, a2, b1, b2);
          ssim_sum += S;

          // Partials w.r.t. the weighted sums (Sx, Sxx, Sxy).
          double dS_da1 = a2 / (b1 * b2);
          double dS_da2 = a1 / (b1 * b2);
          double dS_db1 = -S / b1;
          double dS_db2 = -S / b2;
          double d_mx = dS_da1 * 2.0 * st.my + dS_db1 * 2.0 * st.mx;
          double d_sxx = dS_db2;
          double d_sxy = dS_da2 * 2.0;
          double d_Sx = d_mx - d_sxx * 2.0 * st.mx - d_sxy * st.my;
          double d_Sxx = d_sxx;
          double d_Sxy = d_sxy;

          for (int ky = 0; ky < win; ++ky)
            for (int kx = 0; kx < win; ++kx) {
              double wgt = g[static_cast<size_t>(ky) * win + kx];
              int yy = crop.y0 + wy + ky, xx = crop.x0 + wx + kx;
              double xv = rendered.at(yy, xx, c);
              double yv = target.at(yy, xx, c);
              out.d_rendered.at(yy, xx, c) +=
                  d_scale * wgt * (d_Sx + d_Sxx * 2.0 * xv + d_Sxy * yv);
            }
        }
      }
    }
    out.ssim = ssim_sum / count;
  }

  out.total = l1_weight * out.l1 + ssim_weight * (1.0 - out.ssim);
  return out;
}

double ssim_mean(const Image& a, const Image& b, const CropRect& crop, const SsimParams& params) {
  require(a.same_shape(b), ErrorKind::Dimension, "image shapes differ");
  const int win = params.window;
  const int vh = crop.height() - win + 1;
  const int vw = crop.width() - win + 1;
  if (vh <= 0 || vw <= 0) return 1.0;
  const auto g = gaussian_window(win, params.sigma);
  const double c1 = params.k1 * params.k1;
  const double c2 = params.k2 * params.k2;
  double sum = 0.0;
  for (int c = 0; c < a.channels; ++c)
    for (int wy = 0; wy < vh; ++wy)
      for (int wx = 0; wx < vw; ++wx) {
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (int ky = 0; ky < win; ++ky)
          for (int kx = 0; kx < win; ++kx) {
            double wgt = g[static_cast<size_t>(ky) * win + kx];
            double xv = a.at(crop.y0 + wy + ky, crop.x0 + wx + kx, c);
            double yv = b.at(crop.y0 + wy + ky, crop.x0 + wx + kx, c);
            sx += wgt * xv;
            sy += wgt * yv;
            sxx += wgt * xv * xv;
            syy += wgt * yv * yv;
            sxy += wgt * xv * yv;
          }
        WindowStats st{sx, sy, sxx - sx * sx, syy - sy * sy, sxy - sx * sy};
        double a1, a2, b1, b2;
        sum += ssim_value(st, c1, c2, a1, a2, b1, b2);
      }
  return sum / (static_cast<double>(vh) * vw * a.channels);
}

}  // namespace gsav::objective
