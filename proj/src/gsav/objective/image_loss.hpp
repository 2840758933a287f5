#pragma once

#include "gsav/core/image.hpp"
#include "gsav/core/types.hpp"

namespace gsav::objective {

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
};

struct ImageLossResult {
  double total = 0.0;  // l1_weight * L1 + ssim_weight * (1 - SSIM)
  double l1 = 0.0;     // mean L1 over the crop
  double ssim = 1.0;   // mean SSIM over valid windows (1 when crop < window)
  Image d_rendered;    // gradient of total, zero outside the crop
};

// Mean-L1 plus (1 - SSIM) on a crop. SSIM uses a Gaussian window evaluated
// only at positions fully inside the crop; crops smaller than the window
// contribute no SSIM term.
ImageLossResult image_loss(const Image& rendered, const Image& target, const CropRect& crop,
                           double l1_weight, double ssim_weight, const SsimParams& params = {});

// Mean SSIM only (no gradient); same windowing rules.
double ssim_mean(const Image& a, const Image& b, const CropRect& crop,
                 const SsimParams& params = {});

}  // namespace gsav::objective
