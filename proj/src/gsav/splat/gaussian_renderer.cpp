#include "gsav/splat/gaussian_renderer.hpp"

#include <algorithm>
#include <cmath>

#include "gsav/core/error.hpp"
#include "gsav/core/parallel.hpp"
#include "gsav/mesh/normals.hpp"

namespace gsav::splat {

namespace {

std::vector<SplatPoint> build_splats(const GaussianCloud& cloud, const Camera& camera,
                                     const RenderConfig& cfg) {
  require(cloud.log_scales.size() == cloud.size() && cloud.colors.rows() == cloud.size(),
          ErrorKind::Dimension, "cloud arrays disagree on gaussian count");
  require(cloud.positions.allFinite() && cloud.log_scales.allFinite() &&
              cloud.colors.allFinite(),
          ErrorKind::Numeric, "non-finite values in gaussian cloud");

  MatX3 normals = MatX3::Zero(cloud.size(), 3);
  if (cloud.faces.rows() > 0) normals = mesh::vertex_normals(cloud.positions, cloud.faces).normals;

  std::vector<SplatPoint> splats;
  splats.reserve(static_cast<size_t>(cloud.size()));
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    Vec3 pc = camera.to_camera(cloud.positions.row(i));
    if (pc.z() <= cfg.near_plane) continue;  // culled, not an error
    SplatPoint s;
    s.index = static_cast<int>(i);
    s.X = pc.x();
    s.Y = pc.y();
    s.Z = pc.z();
    s.ux = camera.fx * pc.x() / pc.z();
    s.uy = camera.fy * pc.y() / pc.z();
    double scale = std::exp(cloud.log_scales[i]);
    s.sx = scale * camera.fx / pc.z();
    s.sy = scale * camera.fy / pc.z();
    s.color = cloud.colors.row(i);
    s.normal = normals.row(i);
    splats.push_back(s);
  }
  std::sort(splats.begin(), splats.end(), [](const SplatPoint& a, const SplatPoint& b) {
    if (a.Z != b.Z) return a.Z < b.Z;
    return a.index < b.index;
  });
  return splats;
}

// Pixel index range whose centers a splat's 3-sigma box can touch.
inline void pixel_range(double center, double radius, int limit, int& lo, int& hi) {
  lo = std::max(0, static_cast<int>(std::floor(center - radius - 0.5)));
  hi = std::min(limit - 1, static_cast<int>(std::ceil(center + radius - 0.5)));
}

struct PixelAccum {
  Vec3 rgb = Vec3::Zero();
  double alpha = 0.0;
  double depth = 0.0;
  Vec3 normal = Vec3::Zero();
  double T = 1.0;
};

// Per-pixel front-to-back compositing over an ordered splat subset. The
// weight function (3-sigma truncation, 0.99 clamp) and the early-out at
// T < stop_transmittance define the compositing semantics for every render
// path, so the tiled and brute-force renderers agree bit-for-bit.
template <typename Visitor>
inline void composite_pixel(const std::vector<SplatPoint>& splats, const std::vector<int>& order,
                            double px_rel_x, double px_rel_y, const RenderConfig& cfg,
                            PixelAccum& acc, Visitor&& visit) {
  for (int si : order) {
    const SplatPoint& s = splats[static_cast<size_t>(si)];
    double dx = px_rel_x - s.ux;
    double dy = px_rel_y - s.uy;
    double q = dx * dx / (2.0 * s.sx * s.sx) + dy * dy / (2.0 * s.sy * s.sy);
    if (q > cfg.truncation_q) continue;
    double w = std::exp(-q);
    bool clamped = w > cfg.weight_clamp;
    if (clamped) w = cfg.weight_clamp;
    double contrib = w * acc.T;
    acc.rgb += contrib * s.color;
    acc.alpha += contrib;
    acc.depth += contrib * s.Z;
    acc.normal += contrib * s.normal;
    visit(si, w, acc.T, clamped);
    acc.T *= 1.0 - w;
    if (acc.T < cfg.stop_transmittance) break;
  }
}

void store_pixel(RenderOutput& out, int y, int x, const PixelAccum& acc) {
  for (int c = 0; c < 3; ++c) {
    out.rgb.at(y, x, c) = acc.rgb[c];
    out.normal.at(y, x, c) = acc.normal[c];
  }
  out.alpha.at(y, x, 0) = acc.alpha;
  out.depth.at(y, x, 0) = acc.depth;
  out.transmittance.at(y, x, 0) = acc.T;
}

RenderOutput make_output(const Camera& camera) {
  RenderOutput out;
  out.rgb = Image(camera.width, camera.height, 3);
  out.alpha = Image(camera.width, camera.height, 1);
  out.depth = Image(camera.width, camera.height, 1);
  out.normal = Image(camera.width, camera.height, 3);
  out.transmittance = Image(camera.width, camera.height, 1, 1.0);
  return out;
}

void bin_tiles(const std::vector<SplatPoint>& splats, const Camera& camera,
               const RenderConfig& cfg, RenderCache& cache) {
  const int ts = cfg.tile_size;
  cache.tiles_x = (camera.width + ts - 1) / ts;
  cache.tiles_y = (camera.height + ts - 1) / ts;
  cache.tile_bins.assign(static_cast<size_t>(cache.tiles_x) * cache.tiles_y, {});
  const double k = std::sqrt(2.0 * cfg.truncation_q);  // q <= 4.5 implies |dx| <= 3 sx
  for (size_t si = 0; si < splats.size(); ++si) {
    const SplatPoint& s = splats[si];
    int x0, x1, y0, y1;
    pixel_range(camera.cx + s.ux, k * s.sx, camera.width, x0, x1);
    pixel_range(camera.cy + s.uy, k * s.sy, camera.height, y0, y1);
    if (x0 > x1 || y0 > y1) continue;
    for (int ty = y0 / ts; ty <= y1 / ts; ++ty)
      for (int tx = x0 / ts; tx <= x1 / ts; ++tx)
        cache.tile_bins[static_cast<size_t>(ty) * cache.tiles_x + tx].push_back(
            static_cast<int>(si));
  }
}

}  // namespace

RenderOutput render_gaussians(const GaussianCloud& cloud, const Camera& camera,
                              const RenderConfig& cfg, RenderCache* cache_out) {
  RenderCache local;
  RenderCache& cache = cache_out ? *cache_out : local;
  cache.config = cfg;
  cache.splats = build_splats(cloud, camera, cfg);
  bin_tiles(cache.splats, camera, cfg, cache);

  RenderOutput out = make_output(camera);
  const int ts = cfg.tile_size;
  int tile_count = cache.tiles_x * cache.tiles_y;
  parallel_for(tile_count, cfg.workers, [&](int tile) {
    int ty = tile / cache.tiles_x;
    int tx = tile % cache.tiles_x;
    const auto& bin = cache.tile_bins[static_cast<size_t>(tile)];
    if (bin.empty()) return;
    int y_end = std::min(camera.height, (ty + 1) * ts);
    int x_end = std::min(camera.width, (tx + 1) * ts);
    for (int y = ty * ts; y < y_end; ++y) {
      for (int x = tx * ts; x < x_end; ++x) {
        PixelAccum acc;
        composite_pixel(cache.splats, bin, (x + 0.5) - camera.cx, (y + 0.5) - camera.cy, cfg, acc,
                        [](int, double, double, bool) {});
        store_pixel(out, y, x, acc);
      }
    }
  });
  return out;
}

RenderOutput brute_force_render(const GaussianCloud& cloud, const Camera& camera,
                                const RenderConfig& cfg) {
  std::vector<SplatPoint> splats = build_splats(cloud, camera, cfg);
  std::vector<int> all(splats.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  RenderOutput out = make_output(camera);
  for (int y = 0; y < camera.height; ++y) {
    for (int x = 0; x < camera.width; ++x) {
      PixelAccum acc;
      composite_pixel(splats, all, (x + 0.5) - camera.cx, (y + 0.5) - camera.cy, cfg, acc,
                      [](int, double, double, bool) {});
      store_pixel(out, y, x, acc);
    }
  }
  return out;
}

RenderGrads render_gaussians_backward(const GaussianCloud& cloud, const Camera& camera,
                                      const RenderCache& cache, const Image& d_rgb,
                                      const Image& d_alpha) {
  require(d_rgb.width == camera.width && d_rgb.height == camera.height && d_rgb.channels == 3,
          ErrorKind::Dimension, "d_rgb shape mismatch");
  require(d_alpha.width == camera.width && d_alpha.height == camera.height &&
              d_alpha.channels == 1,
          ErrorKind::Dimension, "d_alpha shape mismatch");
  const RenderConfig& cfg = cache.config;
  const int ts = cfg.tile_size;
  const int tile_count = cache.tiles_x * cache.tiles_y;

  // Gradients accumulate into per-tile buffers merged in tile order, so the
  // result is identical for any worker count.
  struct TileGrads {
    std::vector<Vec3> d_cam;  // (dX, dY, dZ) per bin slot
    std::vector<double> d_s;
    std::vector<Vec3> d_color;
  };
  std::vector<TileGrads> tile_grads(static_cast<size_t>(tile_count));

  struct Hit {
    int si;
    size_t slot;
    double w, T;
    bool clamped;
  };

  parallel_for(tile_count, cfg.workers, [&](int tile) {
    const auto& bin = cache.tile_bins[static_cast<size_t>(tile)];
    if (bin.empty()) return;
    TileGrads& tg = tile_grads[static_cast<size_t>(tile)];
    tg.d_cam.assign(bin.size(), Vec3::Zero());
    tg.d_s.assign(bin.size(), 0.0);
    tg.d_color.assign(bin.size(), Vec3::Zero());
    std::vector<Hit> hits;
    hits.reserve(64);

    int ty = tile / cache.tiles_x;
    int tx = tile % cache.tiles_x;
    int y_end = std::min(camera.height, (ty + 1) * ts);
    int x_end = std::min(camera.width, (tx + 1) * ts);
    for (int y = ty * ts; y < y_end; ++y) {
      for (int x = tx * ts; x < x_end; ++x) {
        Vec3 g_rgb(d_rgb.at(y, x, 0), d_rgb.at(y, x, 1), d_rgb.at(y, x, 2));
        double g_alpha = d_alpha.at(y, x, 0);
        if (g_rgb.isZero(0.0) && g_alpha == 0.0) continue;

        double px = (x + 0.5) - camera.cx;
        double py = (y + 0.5) - camera.cy;
        hits.clear();
        size_t cursor = 0;
        PixelAccum acc;
        composite_pixel(cache.splats, bin, px, py, cfg, acc,
                        [&](int si, double w, double T, bool clamped) {
                          while (bin[cursor] != si) ++cursor;  // hits follow bin order
                          hits.push_back({si, cursor, w, T, clamped});
                        });

        // Suffix pass: dL/dw_i = T_i g_i - sum_{j>i} w_j T_j g_j / (1 - w_i),
        // with g_j = c_j . d_rgb + d_alpha.
        double suffix = 0.0;
        for (int h = static_cast<int>(hits.size()) - 1; h >= 0; --h) {
          const Hit& hit = hits[static_cast<size_t>(h)];
          const SplatPoint& s = cache.splats[static_cast<size_t>(hit.si)];
          double g = s.color.dot(g_rgb) + g_alpha;
          double dw = hit.T * g - suffix / (1.0 - hit.w);
          suffix += hit.w * hit.T * g;

          tg.d_color[hit.slot] += hit.w * hit.T * g_rgb;

          if (hit.clamped) continue;  // clamp subgradient: w held constant
          double dq = -hit.w * dw;
          double dx = px - s.ux;
          double dy = py - s.uy;
          double d_dx = dq * dx / (s.sx * s.sx);
          double d_dy = dq * dy / (s.sy * s.sy);
          double d_sx = -dq * dx * dx / (s.sx * s.sx * s.sx);
          double d_sy = -dq * dy * dy / (s.sy * s.sy * s.sy);

          // ux = fx X / Z, sx = exp(s) fx / Z (and likewise in y).
          double dX = -d_dx * camera.fx / s.Z;
          double dY = -d_dy * camera.fy / s.Z;
          double dZ = d_dx * camera.fx * s.X / (s.Z * s.Z) + d_dy * camera.fy * s.Y / (s.Z * s.Z) -
                      d_sx * s.sx / s.Z - d_sy * s.sy / s.Z;
          double dS = d_sx * s.sx + d_sy * s.sy;

          tg.d_cam[hit.slot] += Vec3(dX, dY, dZ);
          tg.d_s[hit.slot] += dS;
        }
      }
    }
  });

  RenderGrads grads;
  grads.d_positions = MatX3::Zero(cloud.size(), 3);
  grads.d_log_scales = VecX::Zero(cloud.size());
  grads.d_colors = MatX3::Zero(cloud.size(), 3);
  Mat3 Rt = camera.rotation.transpose();
  for (int tile = 0; tile < tile_count; ++tile) {
    const auto& bin = cache.tile_bins[static_cast<size_t>(tile)];
    const TileGrads& tg = tile_grads[static_cast<size_t>(tile)];
    if (tg.d_cam.empty()) continue;
    for (size_t slot = 0; slot < bin.size(); ++slot) {
      int gi = cache.splats[static_cast<size_t>(bin[slot])].index;
      grads.d_positions.row(gi) += (Rt * tg.d_cam[slot]).transpose();
      grads.d_log_scales[gi] += tg.d_s[slot];
      grads.d_colors.row(gi) += tg.d_color[slot].transpose();
    }
  }
  return grads;
}

}  // namespace gsav::splat
