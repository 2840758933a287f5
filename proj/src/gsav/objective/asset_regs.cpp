#include "gsav/objective/asset_regs.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::objective {

OffsetReg offset_reg(const MatX& offsets) {
  OffsetReg out;
  const double inv_n = offsets.rows() > 0 ? 1.0 / static_cast<double>(offsets.rows()) : 0.0;
  out.value = offsets.squaredNorm() * inv_n;
  out.d_offsets = 2.0 * inv_n * offsets;
  return out;
}

ScaleReg scale_reg(const VecX& log_scales) {
  ScaleReg out;
  const double inv_n = log_scales.size() > 0 ? 1.0 / static_cast<double>(log_scales.size()) : 0.0;
  out.d_log_scales = VecX::Zero(log_scales.size());
  for (Eigen::Index i = 0; i < log_scales.size(); ++i) {
    double e2 = std::exp(2.0 * log_scales[i]);
    out.value += e2 * inv_n;
    out.d_log_scales[i] = 2.0 * e2 * inv_n;
  }
  return out;
}

HandColorReg hand_color_reg(const MatX3& colors, const std::vector<PartLabel>& labels) {
  require(static_cast<Eigen::Index>(labels.size()) == colors.rows(), ErrorKind::Dimension,
          "label count does not match color rows");
  HandColorReg out;
  out.d_colors = MatX3::Zero(colors.rows(), 3);
  for (PartLabel hand : {PartLabel::LeftHand, PartLabel::RightHand}) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
      if (labels[static_cast<size_t>(i)] == hand) idx.push_back(i);
    if (idx.empty()) continue;
    Vec3 mean = Vec3::Zero();
    for (int i : idx) mean += colors.row(i).transpose();
    mean /= static_cast<double>(idx.size());  // stop-gradient target
    double inv_n = 1.0 / static_cast<double>(idx.size());
    for (int i : idx) {
      Vec3 d = colors.row(i).transpose() - mean;
      out.value += d.squaredNorm() * inv_n;
      out.d_colors.row(i) += 2.0 * inv_n * d.transpose();
    }
  }
  return out;
}

SymmetryReg symmetry_reg(const MatX3& joint_offset, const std::vector<int>& mirror_joints,
                         const MatX3& face_offset, const std::vector<int>& mirror_vertices,
                         const std::vector<PartLabel>& labels) {
  require(!mirror_joints.empty() && !mirror_vertices.empty(), ErrorKind::Dimension,
          "symmetry regularizer requires the model's mirror tables");
  require(joint_offset.rows() == static_cast<Eigen::Index>(mirror_joints.size()),
          ErrorKind::Dimension, "joint offset rows do not match mirror table");
  require(face_offset.rows() == static_cast<Eigen::Index>(mirror_vertices.size()),
          ErrorKind::Dimension, "face offset rows do not match mirror table");

  const Vec3 flip(-1.0, 1.0, 1.0);
  SymmetryReg out;
  out.d_joint_offset = MatX3::Zero(joint_offset.rows(), 3);
  out.d_face_offset = MatX3::Zero(face_offset.rows(), 3);

  const double inv_j = 1.0 / static_cast<double>(joint_offset.rows());
  for (Eigen::Index j = 0; j < joint_offset.rows(); ++j) {
    int m = mirror_joints[static_cast<size_t>(j)];
    Vec3 mirrored = flip.asDiagonal() * Vec3(joint_offset.row(m));
    Vec3 d = mirrored - Vec3(joint_offset.row(j));
    out.value += d.squaredNorm() * inv_j;
    out.d_joint_offset.row(j) -= 2.0 * inv_j * d.transpose();
    out.d_joint_offset.row(m) += 2.0 * inv_j * (flip.asDiagonal() * d).transpose();
  }

  std::vector<int> face_rows;
  for (int v = 0; v < static_cast<int>(labels.size()); ++v)
    if (labels[static_cast<size_t>(v)] == PartLabel::Face) face_rows.push_back(v);
  if (!face_rows.empty()) {
    const double inv_f = 1.0 / static_cast<double>(face_rows.size());
    for (int v : face_rows) {
      int m = mirror_vertices[static_cast<size_t>(v)];
      Vec3 mirrored = flip.asDiagonal() * Vec3(face_offset.row(m));
      Vec3 d = mirrored - Vec3(face_offset.row(v));
      out.value += d.squaredNorm() * inv_f;
      out.d_face_offset.row(v) -= 2.0 * inv_f * d.transpose();
      out.d_face_offset.row(m) += 2.0 * inv_f * (flip.asDiagonal() * d).transpose();
    }
  }
  return out;
}

}  // namespace gsav::objective
