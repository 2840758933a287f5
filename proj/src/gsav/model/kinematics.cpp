#include "gsav/model/kinematics.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::model {

namespace {

constexpr double kSmallAngle = 1e-8;

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

}  // namespace

Mat3 axis_angle_to_matrix(const Vec3& aa) {
  double angle = aa.norm();
  if (angle < kSmallAngle) {
    Mat3 k = skew(aa);
    return Mat3::Identity() + k + 0.5 * (k * k);
  }
  Vec3 axis = aa / angle;
  Mat3 k = skew(axis);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

std::array<Mat3, 3> axis_angle_jacobian(const Vec3& aa) {
  std::array<Mat3, 3> out;
  double angle = aa.norm();
  if (angle < kSmallAngle) {
    for (int i = 0; i < 3; ++i) out[i] = skew(Vec3::Unit(i));
    return out;
  }
  // Gallego & Yezzi: dR/dw_i = (w_i [w]x + [w x ((I - R) e_i)]x) / |w|^2 * R
  Mat3 R = axis_angle_to_matrix(aa);
  Mat3 wx = skew(aa);
  double inv2 = 1.0 / (angle * angle);
  for (int i = 0; i < 3; ++i) {
    Vec3 v = aa.cross(Vec3((Mat3::Identity() - R) * Vec3::Unit(i)));
    out[i] = (aa[i] * wx + skew(v)) * inv2 * R;
  }
  return out;
}

FkResult forward_kinematics(const MatX3& rest_joints, const std::vector<int>& parents,
                            const MatX3& pose) {
  const Eigen::Index J = rest_joints.rows();
  require(static_cast<Eigen::Index>(parents.size()) == J, ErrorKind::Dimension,
          "parents size does not match joint count");
  require(pose.rows() == J, ErrorKind::Dimension, "pose rows do not match joint count");

  FkResult out;
  out.local.resize(static_cast<size_t>(J));
  out.global.resize(static_cast<size_t>(J));
  out.rest_to_posed.resize(static_cast<size_t>(J));
  for (Eigen::Index j = 0; j < J; ++j) {
    int p = parents[static_cast<size_t>(j)];
    require(p < j, ErrorKind::Format, "parents must be topologically ordered");
    Rigid local;
    local.R = axis_angle_to_matrix(pose.row(j));
    local.t = (p < 0) ? Vec3(rest_joints.row(j))
                      : Vec3(rest_joints.row(j) - rest_joints.row(p));
    out.local[static_cast<size_t>(j)] = local;
    out.global[static_cast<size_t>(j)] =
        (p < 0) ? local : out.global[static_cast<size_t>(p)].compose(local);
    const Rigid& g = out.global[static_cast<size_t>(j)];
    out.rest_to_posed[static_cast<size_t>(j)] = {g.R, g.t - g.R * Vec3(rest_joints.row(j))};
  }
  return out;
}

FkGrads forward_kinematics_backward(const FkResult& fk, const MatX3& rest_joints,
                                    const std::vector<int>& parents, const MatX3& pose,
                                    const std::vector<RigidGrad>& d_rest_to_posed,
                                    const std::vector<RigidGrad>& d_global) {
  const Eigen::Index J = rest_joints.rows();
  FkGrads grads;
  grads.d_rest_joints = MatX3::Zero(J, 3);
  grads.d_pose = MatX3::Zero(J, 3);

  std::vector<RigidGrad> dG(static_cast<size_t>(J));
  if (!d_global.empty()) {
    require(d_global.size() == static_cast<size_t>(J), ErrorKind::Dimension,
            "global gradient seed count mismatch");
    dG = d_global;
  }
  if (!d_rest_to_posed.empty()) {
    require(d_rest_to_posed.size() == static_cast<size_t>(J), ErrorKind::Dimension,
            "rest_to_posed gradient seed count mismatch");
    // A_j = G_j o T(-rest_j): A.R = G.R, A.t = G.t - G.R rest_j
    for (Eigen::Index j = 0; j < J; ++j) {
      const RigidGrad& dA = d_rest_to_posed[static_cast<size_t>(j)];
      Vec3 rj = rest_joints.row(j);
      dG[static_cast<size_t>(j)].R += dA.R - dA.t * rj.transpose();
      dG[static_cast<size_t>(j)].t += dA.t;
      grads.d_rest_joints.row(j) -= (fk.global[static_cast<size_t>(j)].R.transpose() * dA.t);
    }
  }

  for (Eigen::Index j = J - 1; j >= 0; --j) {
    const RigidGrad& dGj = dG[static_cast<size_t>(j)];
    if (dGj.R.isZero(0.0) && dGj.t.isZero(0.0)) continue;
    int p = parents[static_cast<size_t>(j)];
    RigidGrad dL;
    if (p < 0) {
      dL = dGj;
    } else {
      compose_backward(fk.global[static_cast<size_t>(p)], fk.local[static_cast<size_t>(j)], dGj,
                       dG[static_cast<size_t>(p)], dL);
    }
    auto jac = axis_angle_jacobian(pose.row(j));
    for (int k = 0; k < 3; ++k) grads.d_pose(j, k) += (dL.R.array() * jac[k].array()).sum();
    grads.d_rest_joints.row(j) += dL.t.transpose();
    if (p >= 0) grads.d_rest_joints.row(p) -= dL.t.transpose();
  }
  return grads;
}

MatX3 lbs(const MatX3& vertices, const std::vector<Rigid>& transforms,
          const SkinWeights& weights) {
  require(weights.rows() == vertices.rows(), ErrorKind::Dimension,
          "weight rows do not match vertex count");
  MatX3 out(vertices.rows(), 3);
  for (Eigen::Index v = 0; v < vertices.rows(); ++v) {
    Vec3 x = vertices.row(v);
    Vec3 acc = Vec3::Zero();
    for (int k = 0; k < SkinWeights::kMaxInfluences; ++k) {
      double w = weights.weights(v, k);
      if (w == 0.0) continue;
      acc += w * transforms[static_cast<size_t>(weights.joints(v, k))].apply(x);
    }
    out.row(v) = acc.transpose();
  }
  return out;
}

MatX3 lbs_backward(const MatX3& vertices, const std::vector<Rigid>& transforms,
                   const SkinWeights& weights, const MatX3& d_posed,
                   std::vector<RigidGrad>& d_transforms) {
  require(d_transforms.size() == transforms.size(), ErrorKind::Dimension,
          "transform gradient count mismatch");
  MatX3 d_vertices = MatX3::Zero(vertices.rows(), 3);
  for (Eigen::Index v = 0; v < vertices.rows(); ++v) {
    Vec3 x = vertices.row(v);
    Vec3 dy = d_posed.row(v);
    for (int k = 0; k < SkinWeights::kMaxInfluences; ++k) {
      double w = weights.weights(v, k);
      if (w == 0.0) continue;
      int j = weights.joints(v, k);
      Vec3 dyw = w * dy;
      Vec3 dx = Vec3::Zero();
      apply_backward(transforms[static_cast<size_t>(j)], x, dyw, d_transforms[static_cast<size_t>(j)],
                     dx);
      d_vertices.row(v) += dx.transpose();
    }
  }
  return d_vertices;
}

}  // namespace gsav::model
