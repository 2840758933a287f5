#pragma once

#include <array>
#include <vector>

#include "gsav/core/rigid.hpp"
#include "gsav/core/types.hpp"
#include "gsav/model/skin_weights.hpp"

namespace gsav::model {

// Rotation from an axis-angle vector via the exponential map, with a series
// fallback below angle 1e-8.
Mat3 axis_angle_to_matrix(const Vec3& aa);

// dR/d(aa_k) for k = 0,1,2.
std::array<Mat3, 3> axis_angle_jacobian(const Vec3& aa);

struct FkResult {
  // rest_to_posed[j] maps rest-frame points rigidly into the posed frame
  // (identity at zero pose). global[j].t is the posed joint position.
  std::vector<Rigid> rest_to_posed;
  std::vector<Rigid> global;
  std::vector<Rigid> local;
};

// parents must be a forest in topological order (parent index < joint index,
// root marked -1).
FkResult forward_kinematics(const MatX3& rest_joints, const std::vector<int>& parents,
                            const MatX3& pose);

struct FkGrads {
  MatX3 d_rest_joints;
  MatX3 d_pose;
};

// Reverse-mode FK. d_rest_to_posed / d_global may be empty (treated as zero
// seeds); when present they must have one entry per joint.
FkGrads forward_kinematics_backward(const FkResult& fk, const MatX3& rest_joints,
                                    const std::vector<int>& parents, const MatX3& pose,
                                    const std::vector<RigidGrad>& d_rest_to_posed,
                                    const std::vector<RigidGrad>& d_global);

// Linear blend skinning: each vertex is the weight-blended image of itself
// under the per-joint transforms (rest pose => identity map).
MatX3 lbs(const MatX3& vertices, const std::vector<Rigid>& transforms, const SkinWeights& weights);

// Returns d_vertices; accumulates transform gradients into d_transforms.
MatX3 lbs_backward(const MatX3& vertices, const std::vector<Rigid>& transforms,
                   const SkinWeights& weights, const MatX3& d_posed,
                   std::vector<RigidGrad>& d_transforms);

}  // namespace gsav::model
