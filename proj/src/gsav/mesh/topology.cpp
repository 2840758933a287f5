#include "gsav/mesh/topology.hpp"

#include <algorithm>
#include <unordered_map>

#include "gsav/core/error.hpp"

namespace gsav::mesh {

namespace {
inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}
}  // namespace

EdgeList build_edge_list(const FaceMat& faces, int vertex_count) {
  EdgeList out;
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(static_cast<size_t>(faces.rows()) * 2);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int k = 0; k < 3; ++k) {
      int a = faces(f, k);
      int b = faces(f, (k + 1) % 3);
      require(a >= 0 && a < vertex_count && b >= 0 && b < vertex_count, ErrorKind::Format,
              "face " + std::to_string(f) + " references vertex out of range");
      require(a != b, ErrorKind::Format, "degenerate edge in face " + std::to_string(f));
      auto key = edge_key(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, static_cast<int>(out.edges.size()));
        out.edges.push_back({std::min(a, b), std::max(a, b)});
        out.incident_faces.push_back(1);
      } else {
        out.incident_faces[it->second] += 1;
      }
    }
  }
  return out;
}

MeshAdjacency MeshAdjacency::build(const FaceMat& faces, int vertex_count) {
  EdgeList el = build_edge_list(faces, vertex_count);
  MeshAdjacency adj;
  adj.offsets.assign(static_cast<size_t>(vertex_count) + 1, 0);
  for (const auto& e : el.edges) {
    adj.offsets[e[0] + 1]++;
    adj.offsets[e[1] + 1]++;
  }
  for (int v = 0; v < vertex_count; ++v) adj.offsets[v + 1] += adj.offsets[v];
  adj.neighbors.resize(el.edges.size() * 2);
  std::vector<int> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& e : el.edges) {
    adj.neighbors[cursor[e[0]]++] = e[1];
    adj.neighbors[cursor[e[1]]++] = e[0];
  }
  for (int v = 0; v < vertex_count; ++v)
    std::sort(adj.neighbors.begin() + adj.offsets[v], adj.neighbors.begin() + adj.offsets[v + 1]);
  return adj;
}

}  // namespace gsav::mesh
