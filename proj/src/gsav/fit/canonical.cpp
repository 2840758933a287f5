#include "gsav/fit/canonical.hpp"

#include <cmath>

#include "gsav/core/error.hpp"

namespace gsav::fit {

CanonicalTopology build_canonical_topology(const model::TemplateModel& m, int subdivisions) {
  CanonicalTopology topo;
  topo.subdivisions = subdivisions;
  topo.chain = mesh::subdivide_times(m.vertices, m.faces, subdivisions);
  topo.faces = topo.chain.faces();
  topo.labels = topo.chain.upsample_labels(m.part_labels);
  topo.interp_weights = topo.chain.upsample_weights(m.skin_weights);
  for (const auto& dirs : m.expr_dirs) topo.expr_dirs_up.push_back(topo.chain.upsample(dirs));
  topo.adjacency = mesh::MeshAdjacency::build(topo.faces, topo.chain.vertex_count());

  // Frozen positional-encoding mesh: zero shape and offsets, big pose applied
  // at base resolution, then subdivided.
  model::FkResult fk = model::forward_kinematics(m.joints, m.parents, m.big_pose);
  MatX3 base_pe = model::lbs(m.vertices, fk.rest_to_posed, m.skin_weights);
  topo.pe_points = topo.chain.upsample(base_pe);

  // Mean incident edge length over the refined connectivity.
  {
    mesh::EdgeList el = mesh::build_edge_list(topo.faces, topo.chain.vertex_count());
    double sum = 0.0;
    for (const auto& e : el.edges)
      sum += (topo.pe_points.row(e[0]) - topo.pe_points.row(e[1])).norm();
    topo.mean_edge_length = el.edges.empty() ? 1.0 : sum / static_cast<double>(el.edges.size());
  }

  // Face submesh with per-corner UV (when the model carries UV).
  std::vector<int> to_submesh(static_cast<size_t>(topo.chain.vertex_count()), -1);
  for (int v = 0; v < topo.chain.vertex_count(); ++v) {
    if (topo.labels[static_cast<size_t>(v)] == PartLabel::Face) {
      to_submesh[static_cast<size_t>(v)] = static_cast<int>(topo.face_rows.size());
      topo.face_rows.push_back(v);
    }
  }
  MatX uv_up;
  if (m.has_uv) uv_up = topo.chain.upsample_corners(m.face_uv);
  std::vector<std::array<int, 3>> sub_faces;
  std::vector<Eigen::Index> sub_face_src;
  for (Eigen::Index f = 0; f < topo.faces.rows(); ++f) {
    int a = to_submesh[static_cast<size_t>(topo.faces(f, 0))];
    int b = to_submesh[static_cast<size_t>(topo.faces(f, 1))];
    int c = to_submesh[static_cast<size_t>(topo.faces(f, 2))];
    if (a < 0 || b < 0 || c < 0) continue;
    sub_faces.push_back({a, b, c});
    sub_face_src.push_back(f);
  }
  topo.face_submesh.resize(static_cast<Eigen::Index>(sub_faces.size()), 3);
  topo.face_submesh_uv.resize(3 * static_cast<Eigen::Index>(sub_faces.size()), 2);
  topo.face_submesh_uv.setZero();
  for (size_t i = 0; i < sub_faces.size(); ++i) {
    for (int k = 0; k < 3; ++k) topo.face_submesh(static_cast<Eigen::Index>(i), k) = sub_faces[i][static_cast<size_t>(k)];
    if (m.has_uv)
      for (int k = 0; k < 3; ++k)
        topo.face_submesh_uv.row(3 * static_cast<Eigen::Index>(i) + k) =
            uv_up.row(3 * sub_face_src[i] + k);
  }
  return topo;
}

CanonicalState build_canonical_state(const model::TemplateModel& m, const CanonicalTopology& topo,
                                     const VecX& beta, const MatX3& joint_offset,
                                     const MatX3& face_offset) {
  CanonicalState st;
  st.shaped = model::shaped_template(m, beta, joint_offset, face_offset);
  st.fk_big = model::forward_kinematics(st.shaped.rest_joints, m.parents, m.big_pose);
  st.base_canonical = model::lbs(st.shaped.rest_vertices, st.fk_big.rest_to_posed, m.skin_weights);
  st.canonical = topo.chain.upsample(st.base_canonical);
  return st;
}

model::ShapingGrads canonical_backward(const model::TemplateModel& m,
                                       const CanonicalTopology& topo, const CanonicalState& state,
                                       const CanonicalSeeds& seeds) {
  MatX3 d_base = topo.chain.upsample_adjoint(seeds.d_canonical);

  std::vector<RigidGrad> dA(static_cast<size_t>(m.joint_count()));
  if (!seeds.d_fk_big.empty()) {
    require(seeds.d_fk_big.size() == dA.size(), ErrorKind::Dimension,
            "big-pose transform seed count mismatch");
    dA = seeds.d_fk_big;
  }
  MatX3 d_rest_vertices = model::lbs_backward(state.shaped.rest_vertices,
                                              state.fk_big.rest_to_posed, m.skin_weights, d_base,
                                              dA);
  model::FkGrads fkg = model::forward_kinematics_backward(
      state.fk_big, state.shaped.rest_joints, m.parents, m.big_pose, dA, /*d_global=*/{});

  MatX3 d_rest_joints = fkg.d_rest_joints;
  if (seeds.d_rest_joints.size() > 0) d_rest_joints += seeds.d_rest_joints;
  return model::shaped_template_backward(m, d_rest_vertices, d_rest_joints);
}

}  // namespace gsav::fit
