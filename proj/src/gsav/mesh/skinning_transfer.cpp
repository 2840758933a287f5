#include "gsav/mesh/skinning_transfer.hpp"

#include "gsav/core/error.hpp"

namespace gsav::mesh {

std::vector<int> nearest_vertex(const MatX3& queries, const MatX3& base_vertices) {
  require(base_vertices.rows() > 0, ErrorKind::Dimension, "empty base vertex set");
  std::vector<int> out(static_cast<size_t>(queries.rows()));
  for (Eigen::Index q = 0; q < queries.rows(); ++q) {
    int best = 0;
    double best_d = (base_vertices.row(0) - queries.row(q)).squaredNorm();
    for (Eigen::Index b = 1; b < base_vertices.rows(); ++b) {
      double d = (base_vertices.row(b) - queries.row(q)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(b);
      }
    }
    out[static_cast<size_t>(q)] = best;
  }
  return out;
}

model::SkinWeights transfer_skinning(const MatX3& upsampled_vertices,
                                     const std::vector<PartLabel>& part_labels,
                                     const MatX3& base_vertices,
                                     const model::SkinWeights& base_weights,
                                     const model::SkinWeights& interpolated_weights) {
  const Eigen::Index N = upsampled_vertices.rows();
  require(static_cast<Eigen::Index>(part_labels.size()) == N, ErrorKind::Dimension,
          "part label count does not match upsampled vertex count");
  require(interpolated_weights.rows() == N, ErrorKind::Dimension,
          "interpolated weight rows do not match upsampled vertex count");
  require(base_weights.rows() == base_vertices.rows(), ErrorKind::Dimension,
          "base weight rows do not match base vertex count");

  model::SkinWeights out;
  out.resize(N);
  std::vector<int> nn;
  for (Eigen::Index v = 0; v < N; ++v) {
    if (part_labels[static_cast<size_t>(v)] == PartLabel::Body) {
      if (nn.empty()) nn = nearest_vertex(upsampled_vertices, base_vertices);
      Eigen::Index src = nn[static_cast<size_t>(v)];
      out.joints.row(v) = base_weights.joints.row(src);
      out.weights.row(v) = base_weights.weights.row(src);
    } else {
      out.joints.row(v) = interpolated_weights.joints.row(v);
      out.weights.row(v) = interpolated_weights.weights.row(v);
    }
  }
  out.normalize_rows();
  return out;
}

}  // namespace gsav::mesh
