#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::model {

// Sparse skinning weights, at most 4 joint influences per vertex. Unused
// slots hold joint 0 with weight 0.
struct SkinWeights {
  static constexpr int kMaxInfluences = 4;

  Eigen::Matrix<int, Eigen::Dynamic, kMaxInfluences> joints;
  Eigen::Matrix<double, Eigen::Dynamic, kMaxInfluences> weights;

  Eigen::Index rows() const { return joints.rows(); }

  void resize(Eigen::Index n) {
    joints.setZero(n, kMaxInfluences);
    weights.setZero(n, kMaxInfluences);
  }

  double row_sum(Eigen::Index v) const { return weights.row(v).sum(); }

  void normalize_rows();

  // Builds a row from (joint, weight) pairs: merges duplicates, keeps the 4
  // strongest influences (ties broken by joint index), renormalizes.
  void set_row_capped(Eigen::Index v, std::vector<std::pair<int, double>> entries);
};

}  // namespace gsav::model
