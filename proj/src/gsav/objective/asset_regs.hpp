#pragma once

#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::objective {

struct ScalarReg {
  double value = 0.0;
};

// mean over rows of ||row||^2
struct OffsetReg : ScalarReg {
  MatX d_offsets;
};
OffsetReg offset_reg(const MatX& offsets);

// mean over points of exp(log_scale)^2
struct ScaleReg : ScalarReg {
  VecX d_log_scales;
};
ScaleReg scale_reg(const VecX& log_scales);

// Per hand (left/right separately): mean ||c_i - mean(c_hand)||^2, means
// re-estimated from the current colors and treated as constant in the
// backward pass.
struct HandColorReg : ScalarReg {
  MatX3 d_colors;
};
HandColorReg hand_color_reg(const MatX3& colors, const std::vector<PartLabel>& labels);

// mean_j ||mirror(dJ)_j - dJ_j||^2 + mean over face vertices of
// ||mirror(dVface)_v - dVface_v||^2, with mirror(X)_i = diag(-1,1,1) X[m(i)].
struct SymmetryReg : ScalarReg {
  MatX3 d_joint_offset;
  MatX3 d_face_offset;
};
SymmetryReg symmetry_reg(const MatX3& joint_offset, const std::vector<int>& mirror_joints,
                         const MatX3& face_offset, const std::vector<int>& mirror_vertices,
                         const std::vector<PartLabel>& labels);

}  // namespace gsav::objective
