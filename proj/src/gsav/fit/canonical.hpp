#pragma once

#include <vector>

#include "gsav/core/rigid.hpp"
#include "gsav/core/types.hpp"
#include "gsav/mesh/subdivide.hpp"
#include "gsav/mesh/topology.hpp"
#include "gsav/model/kinematics.hpp"
#include "gsav/model/shaping.hpp"
#include "gsav/model/template_model.hpp"

namespace gsav::fit {

// Everything about the canonical space that is fixed by (model, subdivision
// count): refined topology, upsampled assets, the frozen positional-encoding
// mesh, and the face submesh used by the face loss.
struct CanonicalTopology {
  int subdivisions = 0;
  mesh::SubdivisionChain chain;           // maps base -> refined
  FaceMat faces;                          // refined connectivity
  std::vector<PartLabel> labels;          // refined
  model::SkinWeights interp_weights;      // subdivision-interpolated
  std::vector<MatX3> expr_dirs_up;        // refined expression basis
  mesh::MeshAdjacency adjacency;          // refined
  MatX3 pe_points;                        // frozen P-bar (zero shape, big pose)
  double mean_edge_length = 0.0;          // of pe_points

  // Face submesh (all three corners face-labeled), re-indexed.
  std::vector<int> face_rows;             // refined mesh rows per submesh vertex
  FaceMat face_submesh;
  MatX2 face_submesh_uv;                  // 3 * submesh faces x 2
};

CanonicalTopology build_canonical_topology(const model::TemplateModel& m, int subdivisions);

// Per-identity canonical state: the shaped T-pose body posed to the big pose
// at base resolution ("downsampled V-bar") and its subdivision.
struct CanonicalState {
  model::ShapedTemplate shaped;
  model::FkResult fk_big;
  MatX3 base_canonical;  // base-resolution big-pose mesh
  MatX3 canonical;       // refined V-bar
};

CanonicalState build_canonical_state(const model::TemplateModel& m, const CanonicalTopology& topo,
                                     const VecX& beta, const MatX3& joint_offset,
                                     const MatX3& face_offset);

struct CanonicalSeeds {
  MatX3 d_canonical;                // dL / dV-bar (refined)
  std::vector<RigidGrad> d_fk_big;  // seeds on big-pose rest_to_posed transforms
  MatX3 d_rest_joints;              // direct seeds (e.g. from FK at the frame pose)
};

model::ShapingGrads canonical_backward(const model::TemplateModel& m,
                                       const CanonicalTopology& topo, const CanonicalState& state,
                                       const CanonicalSeeds& seeds);

}  // namespace gsav::fit
