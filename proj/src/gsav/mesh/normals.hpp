#pragma once

#include <vector>

#include "gsav/core/types.hpp"

namespace gsav::mesh {

struct VertexNormals {
  MatX3 normals;                 // unit rows; zero row when flagged invalid
  std::vector<std::uint8_t> valid;
};

// Area-weighted vertex normals: normalized sum of incident un-normalized face
// cross products. Degenerate faces contribute zero; a zero sum yields a
// flagged zero normal.
VertexNormals vertex_normals(const MatX3& vertices, const FaceMat& faces);

}  // namespace gsav::mesh
