#include "gsav/mesh/normals.hpp"

#include "gsav/core/error.hpp"

namespace gsav::mesh {

VertexNormals vertex_normals(const MatX3& vertices, const FaceMat& faces) {
  const Eigen::Index V = vertices.rows();
  VertexNormals out;
  out.normals = MatX3::Zero(V, 3);
  out.valid.assign(static_cast<size_t>(V), 0);

  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    int a = faces(f, 0), b = faces(f, 1), c = faces(f, 2);
    require(a >= 0 && a < V && b >= 0 && b < V && c >= 0 && c < V, ErrorKind::Format,
            "face " + std::to_string(f) + " references vertex out of range");
    Vec3 n = (vertices.row(b) - vertices.row(a))
                 .cross(Vec3(vertices.row(c) - vertices.row(a)));
    out.normals.row(a) += n;
    out.normals.row(b) += n;
    out.normals.row(c) += n;
  }
  constexpr double kMinNorm = 1e-12;
  for (Eigen::Index v = 0; v < V; ++v) {
    double n = out.normals.row(v).norm();
    if (n > kMinNorm) {
      out.normals.row(v) /= n;
      out.valid[static_cast<size_t>(v)] = 1;
    } else {
      out.normals.row(v).setZero();
    }
  }
  return out;
}

}  // namespace gsav::mesh
