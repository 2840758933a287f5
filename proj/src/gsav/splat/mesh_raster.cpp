#include "gsav/splat/mesh_raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsav/core/error.hpp"

namespace gsav::splat {

namespace {

constexpr double kNear = 1e-4;
constexpr double kMinArea = 1e-12;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

void sample_texture(const Image& texture, double u, double v, Vec3& color, Vec3& d_du,
                    Vec3& d_dv) {
  const int W = texture.width, H = texture.height;
  double x = std::clamp(u, 0.0, 1.0) * (W - 1);
  double y = std::clamp(v, 0.0, 1.0) * (H - 1);
  int x0 = std::min(static_cast<int>(std::floor(x)), W - 2);
  int y0 = std::min(static_cast<int>(std::floor(y)), H - 2);
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  double fx = x - x0, fy = y - y0;
  bool clamped_u = u < 0.0 || u > 1.0;
  bool clamped_v = v < 0.0 || v > 1.0;
  for (int c = 0; c < texture.channels && c < 3; ++c) {
    double t00 = texture.at(y0, x0, c), t10 = texture.at(y0, x0 + 1, c);
    double t01 = texture.at(y0 + 1, x0, c), t11 = texture.at(y0 + 1, x0 + 1, c);
    color[c] = (1 - fx) * (1 - fy) * t00 + fx * (1 - fy) * t10 + (1 - fx) * fy * t01 +
               fx * fy * t11;
    double dx = (1 - fy) * (t10 - t00) + fy * (t11 - t01);
    double dy = (1 - fx) * (t01 - t00) + fx * (t11 - t10);
    d_du[c] = clamped_u ? 0.0 : dx * (W - 1);
    d_dv[c] = clamped_v ? 0.0 : dy * (H - 1);
  }
}

MeshRenderOutput render_mesh(const MatX3& vertices, const FaceMat& faces, const MatX2& corner_uv,
                             const Image& texture, const Camera& camera, MeshRasterCache* cache) {
  require(corner_uv.rows() == 3 * faces.rows(), ErrorKind::Dimension,
          "corner uv rows must be 3 * face count");
  require(texture.channels >= 3 && texture.width >= 2 && texture.height >= 2, ErrorKind::Dimension,
          "texture must be RGB with resolution >= 2");

  const int W = camera.width, H = camera.height;
  MeshRenderOutput out;
  out.rgb = Image(W, H, 3);
  out.mask = Image(W, H, 1);

  MeshRasterCache local;
  MeshRasterCache& rc = cache ? *cache : local;
  rc.width = W;
  rc.height = H;
  rc.face.assign(static_cast<size_t>(W) * H, -1);
  rc.bary.assign(static_cast<size_t>(W) * H * 3, 0.0);
  std::vector<double> zbuf(static_cast<size_t>(W) * H, std::numeric_limits<double>::infinity());

  // Screen positions.
  MatX2 screen(vertices.rows(), 2);
  VecX depth(vertices.rows());
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    Vec3 pc = camera.to_camera(vertices.row(i));
    depth[i] = pc.z();
    if (pc.z() > kNear) {
      screen(i, 0) = camera.fx * pc.x() / pc.z() + camera.cx;
      screen(i, 1) = camera.fy * pc.y() / pc.z() + camera.cy;
    }
  }

  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    int ia = faces(f, 0), ib = faces(f, 1), ic = faces(f, 2);
    if (depth[ia] <= kNear || depth[ib] <= kNear || depth[ic] <= kNear) continue;
    Vec2 a = screen.row(ia), b = screen.row(ib), c = screen.row(ic);
    double area = cross2(b - a, c - a);
    if (std::abs(area) < kMinArea) continue;

    int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x(), b.x(), c.x()}) - 0.5)));
    int x1 = std::min(W - 1, static_cast<int>(std::ceil(std::max({a.x(), b.x(), c.x()}) - 0.5)));
    int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y(), b.y(), c.y()}) - 0.5)));
    int y1 = std::min(H - 1, static_cast<int>(std::ceil(std::max({a.y(), b.y(), c.y()}) - 0.5)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        Vec2 p(x + 0.5, y + 0.5);
        double l0 = cross2(c - b, p - b) / area;
        double l1 = cross2(a - c, p - c) / area;
        double l2 = 1.0 - l0 - l1;
        if (l0 < 0.0 || l1 < 0.0 || l2 < 0.0) continue;
        double z = l0 * depth[ia] + l1 * depth[ib] + l2 * depth[ic];
        size_t pi = static_cast<size_t>(y) * W + x;
        if (z >= zbuf[pi]) continue;
        zbuf[pi] = z;
        rc.face[pi] = static_cast<int>(f);
        rc.bary[3 * pi + 0] = l0;
        rc.bary[3 * pi + 1] = l1;
        rc.bary[3 * pi + 2] = l2;
      }
    }
  }

  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      size_t pi = static_cast<size_t>(y) * W + x;
      int f = rc.face[pi];
      if (f < 0) continue;
      double l0 = rc.bary[3 * pi], l1 = rc.bary[3 * pi + 1], l2 = rc.bary[3 * pi + 2];
      Vec2 uv = l0 * corner_uv.row(3 * f + 0) + l1 * corner_uv.row(3 * f + 1) +
                l2 * corner_uv.row(3 * f + 2);
      Vec3 color = Vec3::Zero(), du = Vec3::Zero(), dv = Vec3::Zero();
      sample_texture(texture, uv.x(), uv.y(), color, du, dv);
      for (int ch = 0; ch < 3; ++ch) out.rgb.at(y, x, ch) = color[ch];
      out.mask.at(y, x, 0) = 1.0;
    }
  }
  return out;
}

MatX3 render_mesh_backward(const MatX3& vertices, const FaceMat& faces, const MatX2& corner_uv,
                           const Image& texture, const Camera& camera,
                           const MeshRasterCache& cache, const Image& d_rgb) {
  require(d_rgb.width == cache.width && d_rgb.height == cache.height && d_rgb.channels == 3,
          ErrorKind::Dimension, "d_rgb shape mismatch");

  MatX2 screen(vertices.rows(), 2);
  VecX depth(vertices.rows());
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    Vec3 pc = camera.to_camera(vertices.row(i));
    depth[i] = pc.z();
    if (pc.z() > kNear) {
      screen(i, 0) = camera.fx * pc.x() / pc.z() + camera.cx;
      screen(i, 1) = camera.fy * pc.y() / pc.z() + camera.cy;
    }
  }

  MatX2 d_screen = MatX2::Zero(vertices.rows(), 2);
  for (int y = 0; y < cache.height; ++y) {
    for (int x = 0; x < cache.width; ++x) {
      size_t pi = static_cast<size_t>(y) * cache.width + x;
      int f = cache.face[pi];
      if (f < 0) continue;
      Vec3 g(d_rgb.at(y, x, 0), d_rgb.at(y, x, 1), d_rgb.at(y, x, 2));
      if (g.isZero(0.0)) continue;

      double l0 = cache.bary[3 * pi], l1 = cache.bary[3 * pi + 1], l2 = cache.bary[3 * pi + 2];
      Vec2 uv0 = corner_uv.row(3 * f + 0), uv1 = corner_uv.row(3 * f + 1),
           uv2 = corner_uv.row(3 * f + 2);
      Vec2 uv = l0 * uv0 + l1 * uv1 + l2 * uv2;
      Vec3 color = Vec3::Zero(), du = Vec3::Zero(), dv = Vec3::Zero();
      sample_texture(texture, uv.x(), uv.y(), color, du, dv);
      Vec2 d_uv(g.dot(du), g.dot(dv));
      Vec3 d_l(d_uv.dot(uv0), d_uv.dot(uv1), d_uv.dot(uv2));

      int ia = faces(f, 0), ib = faces(f, 1), ic = faces(f, 2);
      Vec2 a = screen.row(ia), b = screen.row(ib), c = screen.row(ic);
      Vec2 p(x + 0.5, y + 0.5);
      double area = cross2(b - a, c - a);
      double e0 = cross2(c - b, p - b);
      double e1 = cross2(a - c, p - c);
      double e2 = cross2(b - a, p - a);

      // d(area)/d(vertex) (cyclic) and d(e_k)/d(vertex).
      Vec2 dA_da(b.y() - c.y(), c.x() - b.x());
      Vec2 dA_db(c.y() - a.y(), a.x() - c.x());
      Vec2 dA_dc(a.y() - b.y(), b.x() - a.x());

      Vec2 de0_db(c.y() - p.y(), p.x() - c.x());
      Vec2 de0_dc(p.y() - b.y(), b.x() - p.x());
      Vec2 de1_dc(a.y() - p.y(), p.x() - a.x());
      Vec2 de1_da(p.y() - c.y(), c.x() - p.x());
      Vec2 de2_da(b.y() - p.y(), p.x() - b.x());
      Vec2 de2_db(p.y() - a.y(), a.x() - p.x());

      double inv_area = 1.0 / area;
      double s0 = d_l[0] * e0 * inv_area * inv_area;
      double s1 = d_l[1] * e1 * inv_area * inv_area;
      double s2 = d_l[2] * e2 * inv_area * inv_area;
      // lk = ek / area  =>  d lk/dv = (dek/dv - lk dA/dv) / area
      d_screen.row(ia) += (d_l[1] * de1_da + d_l[2] * de2_da) * inv_area -
                          (s0 + s1 + s2) * dA_da;
      d_screen.row(ib) += (d_l[0] * de0_db + d_l[2] * de2_db) * inv_area -
                          (s0 + s1 + s2) * dA_db;
      d_screen.row(ic) += (d_l[0] * de0_dc + d_l[1] * de1_dc) * inv_area -
                          (s0 + s1 + s2) * dA_dc;
    }
  }

  // Screen -> world through the pinhole jacobian.
  MatX3 d_vertices = MatX3::Zero(vertices.rows(), 3);
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    if (depth[i] <= kNear) continue;
    if (d_screen.row(i).isZero(0.0)) continue;
    Vec3 pc = camera.to_camera(vertices.row(i));
    double inv_z = 1.0 / pc.z();
    Vec3 du(camera.fx * inv_z, 0.0, -camera.fx * pc.x() * inv_z * inv_z);
    Vec3 dv(0.0, camera.fy * inv_z, -camera.fy * pc.y() * inv_z * inv_z);
    Vec3 d_pc = d_screen(i, 0) * du + d_screen(i, 1) * dv;
    d_vertices.row(i) = (camera.rotation.transpose() * d_pc).transpose();
  }
  return d_vertices;
}

}  // namespace gsav::splat
