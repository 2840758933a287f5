#include "gsav/mesh/subdivide.hpp"

#include <unordered_map>

#include "gsav/core/error.hpp"
#include "gsav/mesh/topology.hpp"

namespace gsav::mesh {

namespace {
inline PartLabel merge_labels(PartLabel a, PartLabel b) {
  if (a == b) return a;
  if (a == PartLabel::Face || b == PartLabel::Face) return PartLabel::Face;
  if (is_hand(a)) return a;
  if (is_hand(b)) return b;
  return PartLabel::Body;
}
}  // namespace

Subdivision subdivide(const MatX3& vertices, const FaceMat& faces) {
  const int V = static_cast<int>(vertices.rows());
  EdgeList el = build_edge_list(faces, V);
  for (size_t e = 0; e < el.edges.size(); ++e) {
    require(el.incident_faces[e] <= 2, ErrorKind::Format,
            "non-manifold edge (" + std::to_string(el.edges[e][0]) + "," +
                std::to_string(el.edges[e][1]) + ") shared by " +
                std::to_string(el.incident_faces[e]) + " faces");
  }

  Subdivision out;
  out.base_vertex_count = V;
  out.edge_parents = el.edges;

  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(el.edges.size());
  for (size_t e = 0; e < el.edges.size(); ++e) {
    std::uint64_t key =
        (static_cast<std::uint64_t>(el.edges[e][0]) << 32) | static_cast<std::uint32_t>(el.edges[e][1]);
    midpoint.emplace(key, V + static_cast<int>(e));
  }
  auto mid = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return midpoint.at((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
  };

  out.vertices.resize(V + static_cast<int>(el.edges.size()), 3);
  out.vertices.topRows(V) = vertices;
  for (size_t e = 0; e < el.edges.size(); ++e)
    out.vertices.row(V + static_cast<Eigen::Index>(e)) =
        0.5 * (vertices.row(el.edges[e][0]) + vertices.row(el.edges[e][1]));

  out.faces.resize(faces.rows() * 4, 3);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    int a = faces(f, 0), b = faces(f, 1), c = faces(f, 2);
    int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    out.faces.row(4 * f + 0) << a, ab, ca;
    out.faces.row(4 * f + 1) << ab, b, bc;
    out.faces.row(4 * f + 2) << ca, bc, c;
    out.faces.row(4 * f + 3) << ab, bc, ca;
  }
  return out;
}

MatX Subdivision::upsample(const MatX& asset) const {
  require(asset.rows() == base_vertex_count, ErrorKind::Dimension,
          "asset rows do not match base vertex count");
  MatX out(base_vertex_count + static_cast<Eigen::Index>(edge_parents.size()), asset.cols());
  out.topRows(base_vertex_count) = asset;
  for (size_t e = 0; e < edge_parents.size(); ++e)
    out.row(base_vertex_count + static_cast<Eigen::Index>(e)) =
        0.5 * (asset.row(edge_parents[e][0]) + asset.row(edge_parents[e][1]));
  return out;
}

MatX Subdivision::upsample_adjoint(const MatX& d_upsampled) const {
  require(d_upsampled.rows() == base_vertex_count + static_cast<Eigen::Index>(edge_parents.size()),
          ErrorKind::Dimension, "gradient rows do not match subdivided vertex count");
  MatX out = d_upsampled.topRows(base_vertex_count);
  for (size_t e = 0; e < edge_parents.size(); ++e) {
    const auto row = d_upsampled.row(base_vertex_count + static_cast<Eigen::Index>(e));
    out.row(edge_parents[e][0]) += 0.5 * row;
    out.row(edge_parents[e][1]) += 0.5 * row;
  }
  return out;
}

std::vector<PartLabel> Subdivision::upsample_labels(const std::vector<PartLabel>& labels) const {
  require(static_cast<int>(labels.size()) == base_vertex_count, ErrorKind::Dimension,
          "label count does not match base vertex count");
  std::vector<PartLabel> out = labels;
  out.reserve(labels.size() + edge_parents.size());
  for (const auto& e : edge_parents) out.push_back(merge_labels(labels[e[0]], labels[e[1]]));
  return out;
}

model::SkinWeights Subdivision::upsample_weights(const model::SkinWeights& w) const {
  require(w.rows() == base_vertex_count, ErrorKind::Dimension,
          "weight rows do not match base vertex count");
  model::SkinWeights out;
  out.resize(base_vertex_count + static_cast<Eigen::Index>(edge_parents.size()));
  out.joints.topRows(base_vertex_count) = w.joints;
  out.weights.topRows(base_vertex_count) = w.weights;
  std::vector<std::pair<int, double>> entries;
  for (size_t e = 0; e < edge_parents.size(); ++e) {
    entries.clear();
    for (int end = 0; end < 2; ++end) {
      Eigen::Index v = edge_parents[e][end];
      for (int k = 0; k < model::SkinWeights::kMaxInfluences; ++k)
        if (w.weights(v, k) != 0.0) entries.emplace_back(w.joints(v, k), 0.5 * w.weights(v, k));
    }
    out.set_row_capped(base_vertex_count + static_cast<Eigen::Index>(e), entries);
  }
  return out;
}

MatX Subdivision::upsample_corners(const MatX& corner_attr) const {
  const Eigen::Index F = faces.rows() / 4;
  require(corner_attr.rows() == 3 * F, ErrorKind::Dimension,
          "corner attribute rows do not match base face count");
  MatX out(3 * faces.rows(), corner_attr.cols());
  for (Eigen::Index f = 0; f < F; ++f) {
    auto ua = corner_attr.row(3 * f + 0);
    auto ub = corner_attr.row(3 * f + 1);
    auto uc = corner_attr.row(3 * f + 2);
    MatX uab = 0.5 * (ua + ub), ubc = 0.5 * (ub + uc), uca = 0.5 * (uc + ua);
    Eigen::Index o = 12 * f;
    out.row(o + 0) = ua;   out.row(o + 1) = uab;  out.row(o + 2) = uca;   // (a, ab, ca)
    out.row(o + 3) = uab;  out.row(o + 4) = ub;   out.row(o + 5) = ubc;   // (ab, b, bc)
    out.row(o + 6) = uca;  out.row(o + 7) = ubc;  out.row(o + 8) = uc;    // (ca, bc, c)
    out.row(o + 9) = uab;  out.row(o + 10) = ubc; out.row(o + 11) = uca;  // (ab, bc, ca)
  }
  return out;
}

SubdivisionChain subdivide_times(const MatX3& vertices, const FaceMat& faces, int times) {
  SubdivisionChain chain;
  chain.base_vertices = vertices;
  chain.base_faces = faces;
  MatX3 v = vertices;
  FaceMat f = faces;
  for (int i = 0; i < times; ++i) {
    chain.levels.push_back(subdivide(v, f));
    v = chain.levels.back().vertices;
    f = chain.levels.back().faces;
  }
  return chain;
}

MatX SubdivisionChain::upsample(const MatX& asset) const {
  MatX a = asset;
  for (const auto& l : levels) a = l.upsample(a);
  return a;
}

MatX SubdivisionChain::upsample_adjoint(const MatX& d) const {
  MatX g = d;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) g = it->upsample_adjoint(g);
  return g;
}

std::vector<PartLabel> SubdivisionChain::upsample_labels(std::vector<PartLabel> labels) const {
  for (const auto& l : levels) labels = l.upsample_labels(labels);
  return labels;
}

model::SkinWeights SubdivisionChain::upsample_weights(model::SkinWeights w) const {
  for (const auto& l : levels) w = l.upsample_weights(w);
  return w;
}

MatX SubdivisionChain::upsample_corners(MatX attr) const {
  for (const auto& l : levels) attr = l.upsample_corners(attr);
  return attr;
}

}  // namespace gsav::mesh
