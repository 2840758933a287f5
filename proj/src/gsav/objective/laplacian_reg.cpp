#include "gsav/objective/laplacian_reg.hpp"

#include "gsav/core/error.hpp"
#include "gsav/mesh/laplacian.hpp"

namespace gsav::objective {

LapRegResult laplacian_reg(const MatX& deformed, const MatX& target_laplacian,
                           const mesh::MeshAdjacency& adj) {
  require(deformed.rows() == target_laplacian.rows() && deformed.cols() == target_laplacian.cols(),
          ErrorKind::Dimension, "deformed/target shapes differ");
  MatX diff = mesh::umbrella_laplacian(deformed, adj) - target_laplacian;
  const double inv_count = 1.0 / static_cast<double>(diff.size());
  LapRegResult out;
  out.value = diff.squaredNorm() * inv_count;
  out.d_deformed = 2.0 * inv_count * mesh::umbrella_laplacian_transpose(diff, adj);
  return out;
}

LapRegResult laplacian_reg_positions(const MatX& deformed, const MatX& canonical,
                                     const mesh::MeshAdjacency& adj) {
  LapRegResult out = laplacian_reg(deformed, mesh::umbrella_laplacian(canonical, adj), adj);
  // Target depends on canonical positions: d/d(can) = -L^T diff scaled.
  out.d_reference = -out.d_deformed;
  return out;
}

LapRegResult laplacian_reg_smooth(const MatX& field, const mesh::MeshAdjacency& adj) {
  return laplacian_reg(field, MatX::Zero(field.rows(), field.cols()), adj);
}

}  // namespace gsav::objective
