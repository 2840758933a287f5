#include "gsav/mesh/laplacian.hpp"

#include "gsav/core/error.hpp"

namespace gsav::mesh {

MatX umbrella_laplacian(const MatX& field, const MeshAdjacency& adj) {
  require(field.rows() == adj.vertex_count(), ErrorKind::Dimension,
          "field rows do not match adjacency vertex count");
  MatX out = MatX::Zero(field.rows(), field.cols());
  for (int v = 0; v < adj.vertex_count(); ++v) {
    int deg = adj.degree(v);
    if (deg == 0) continue;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(field.cols());
    for (const int* n = adj.begin(v); n != adj.end(v); ++n) mean += field.row(*n);
    out.row(v) = field.row(v) - mean / deg;
  }
  return out;
}

MatX umbrella_laplacian_transpose(const MatX& field, const MeshAdjacency& adj) {
  require(field.rows() == adj.vertex_count(), ErrorKind::Dimension,
          "field rows do not match adjacency vertex count");
  MatX out = MatX::Zero(field.rows(), field.cols());
  for (int v = 0; v < adj.vertex_count(); ++v) {
    int deg = adj.degree(v);
    if (deg == 0) continue;
    out.row(v) += field.row(v);
    double inv = 1.0 / deg;
    // Row v of L has -1/deg(v) at each neighbor: contributes to their columns.
    for (const int* n = adj.begin(v); n != adj.end(v); ++n) out.row(*n) -= inv * field.row(v);
  }
  return out;
}

}  // namespace gsav::mesh
