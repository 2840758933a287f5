#include "gsav/field/avatar_field.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::field {

namespace {
MatX3 rows_of(const MatX3& m, const std::vector<int>& idx) {
  MatX3 out(static_cast<Eigen::Index>(idx.size()), 3);
  for (size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}
}  // namespace

AvatarField AvatarField::create(const MatX3& pe_points, const std::vector<PartLabel>& labels,
                                int joint_count, const FieldConfig& cfg, double init_scale) {
  require(static_cast<Eigen::Index>(labels.size()) == pe_points.rows(), ErrorKind::Dimension,
          "label count does not match positional mesh size");
  require(init_scale > 0.0, ErrorKind::Numeric, "init scale must be positive");

  AvatarField f;
  f.cfg = cfg;
  f.pe_points = pe_points;
  f.labels = labels;
  for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
    if (labels[static_cast<size_t>(v)] == PartLabel::Face) f.face_rows.push_back(v);
    else f.body_rows.push_back(v);
  }
  f.pose_dim = (joint_count - 1) * 3;

  MatX3 body_pts = f.body_rows.empty() ? pe_points : rows_of(pe_points, f.body_rows);
  MatX3 face_pts = f.face_rows.empty() ? pe_points : rows_of(pe_points, f.face_rows);
  f.body_plane = Triplane::zeros(cfg.channels, cfg.body_res, cfg.body_res, body_pts, cfg.box_margin);
  f.face_plane = Triplane::zeros(cfg.channels, cfg.face_res, cfg.face_res, face_pts, cfg.box_margin);

  std::mt19937_64 rng(cfg.seed);
  int fdim = 3 * cfg.channels;
  f.geo_mlp = Mlp::create(fdim, cfg.hidden, 4, cfg.gn_groups, rng, /*zero_last=*/true);
  f.color_mlp = Mlp::create(fdim, cfg.hidden, 3, cfg.gn_groups, rng, /*zero_last=*/true);
  f.pose_geo_mlp = Mlp::create(fdim + f.pose_dim, cfg.hidden, 4, cfg.gn_groups, rng, true);
  f.pose_color_mlp = Mlp::create(fdim + f.pose_dim + 3, cfg.hidden, 3, cfg.gn_groups, rng, true);

  // Scale channel bias: exp(bias) tiles the surface at the mean edge length.
  f.geo_mlp.layers.back().b[3] = std::log(init_scale);
  return f;
}

MatX AvatarField::sample_features() const {
  MatX out(feature_dim(), pe_points.rows());
  if (!body_rows.empty()) {
    MatX fb = body_plane.sample(rows_of(pe_points, body_rows));
    for (size_t i = 0; i < body_rows.size(); ++i)
      out.col(body_rows[i]) = fb.col(static_cast<Eigen::Index>(i));
  }
  if (!face_rows.empty()) {
    MatX ff = face_plane.sample(rows_of(pe_points, face_rows));
    for (size_t i = 0; i < face_rows.size(); ++i)
      out.col(face_rows[i]) = ff.col(static_cast<Eigen::Index>(i));
  }
  return out;
}

void AvatarField::features_backward(const MatX& d_features) {
  if (!body_rows.empty()) {
    MatX db(feature_dim(), static_cast<Eigen::Index>(body_rows.size()));
    for (size_t i = 0; i < body_rows.size(); ++i)
      db.col(static_cast<Eigen::Index>(i)) = d_features.col(body_rows[i]);
    body_plane.sample_backward(rows_of(pe_points, body_rows), db);
  }
  if (!face_rows.empty()) {
    MatX df(feature_dim(), static_cast<Eigen::Index>(face_rows.size()));
    for (size_t i = 0; i < face_rows.size(); ++i)
      df.col(static_cast<Eigen::Index>(i)) = d_features.col(face_rows[i]);
    face_plane.sample_backward(rows_of(pe_points, face_rows), df);
  }
}

StaticAssets AvatarField::regress_static(FieldCache& cache) const {
  cache.features = sample_features();
  MatX geo_out = geo_mlp.forward(cache.features, &cache.geo);
  cache.color_raw = color_mlp.forward(cache.features, &cache.color);

  const Eigen::Index N = pe_points.rows();
  StaticAssets sa;
  sa.dv_tri = geo_out.topRows(3).transpose();
  sa.s_tri = geo_out.row(3).transpose();
  sa.c_tri.resize(N, 3);
  for (Eigen::Index i = 0; i < N; ++i)
    for (int c = 0; c < 3; ++c) sa.c_tri(i, c) = 1.0 / (1.0 + std::exp(-cache.color_raw(c, i)));
  return sa;
}

void AvatarField::regress_pose_geo(FieldCache& cache, const VecX& pose_no_root, MatX3& dv_pose,
                                   VecX& ds_pose) const {
  require(pose_no_root.size() == pose_dim, ErrorKind::Dimension,
          "pose vector length does not match (J-1)*3");
  const Eigen::Index N = pe_points.rows();
  const int fdim = feature_dim();

  cache.pose_geo_in.resize(fdim + pose_dim, N);
  cache.pose_geo_in.topRows(fdim) = cache.features;
  cache.pose_geo_in.bottomRows(pose_dim) = pose_no_root.replicate(1, N);

  MatX geo_out = pose_geo_mlp.forward(cache.pose_geo_in, &cache.pose_geo);
  cache.has_pose_geo = true;
  dv_pose = geo_out.topRows(3).transpose();
  ds_pose = geo_out.row(3).transpose();
}

MatX3 AvatarField::regress_pose_color(FieldCache& cache, const MatX3& normals) const {
  require(cache.has_pose_geo, ErrorKind::Dimension, "pose color head needs the geo phase first");
  require(normals.rows() == pe_points.rows(), ErrorKind::Dimension,
          "normal count does not match vertex count");
  const Eigen::Index N = pe_points.rows();
  const int fdim = feature_dim();

  cache.pose_color_in.resize(fdim + pose_dim + 3, N);
  cache.pose_color_in.topRows(fdim + pose_dim) = cache.pose_geo_in;
  cache.pose_color_in.bottomRows(3) = normals.transpose();

  MatX color_out = pose_color_mlp.forward(cache.pose_color_in, &cache.pose_color);
  cache.has_pose_color = true;
  return color_out.transpose();
}

void AvatarField::backward(FieldCache& cache, const MatX3& d_dv_tri, const VecX& d_s_tri,
                           const MatX3& d_c_tri, const MatX3* d_dv_pose, const VecX* d_ds_pose,
                           const MatX3* d_dc_pose, VecX* d_pose_out, MatX3* d_normals_out) {
  const Eigen::Index N = pe_points.rows();
  const int fdim = feature_dim();
  MatX d_features = MatX::Zero(fdim, N);

  if (cache.has_pose && d_dv_pose) {
    MatX d_geo_out(4, N);
    d_geo_out.topRows(3) = d_dv_pose->transpose();
    d_geo_out.row(3) = d_ds_pose->transpose();
    MatX d_in = pose_geo_mlp.backward(cache.pose_geo, d_geo_out);
    d_features += d_in.topRows(fdim);
    VecX d_pose = d_in.bottomRows(pose_dim).rowwise().sum();

    MatX d_color_out = d_dc_pose->transpose();
    MatX d_cin = pose_color_mlp.backward(cache.pose_color, d_color_out);
    d_features += d_cin.topRows(fdim);
    d_pose += d_cin.middleRows(fdim, pose_dim).rowwise().sum();
    if (d_pose_out) *d_pose_out = d_pose;
    if (d_normals_out) *d_normals_out = d_cin.bottomRows(3).transpose();
  } else {
    if (d_pose_out) d_pose_out->setZero(pose_dim);
    if (d_normals_out) *d_normals_out = MatX3::Zero(N, 3);
  }

  // Static color head through the sigmoid.
  MatX d_color_raw(3, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (int c = 0; c < 3; ++c) {
      double s = 1.0 / (1.0 + std::exp(-cache.color_raw(c, i)));
      d_color_raw(c, i) = d_c_tri(i, c) * s * (1.0 - s);
    }
  d_features += color_mlp.backward(cache.color, d_color_raw);

  MatX d_geo_out(4, N);
  d_geo_out.topRows(3) = d_dv_tri.transpose();
  d_geo_out.row(3) = d_s_tri.transpose();
  d_features += geo_mlp.backward(cache.geo, d_geo_out);

  features_backward(d_features);
}

void AvatarField::zero_grad() {
  body_plane.zero_grad();
  face_plane.zero_grad();
  geo_mlp.zero_grad();
  color_mlp.zero_grad();
  pose_geo_mlp.zero_grad();
  pose_color_mlp.zero_grad();
}

}  // namespace gsav::field
