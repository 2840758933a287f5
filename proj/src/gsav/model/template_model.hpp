#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsav/core/types.hpp"
#include "gsav/model/skin_weights.hpp"

namespace gsav::model {

struct LandmarkDef {
  enum class Kind { Joint, Vertex };
  Kind kind = Kind::Joint;
  int index = 0;
};

// Parametric template body: rest mesh, skeleton, skinning weights, shape and
// expression blendshape bases, part labels, and the named canonical big-pose.
struct TemplateModel {
  MatX3 vertices;                // V x 3, meters
  FaceMat faces;                 // F x 3
  MatX3 joints;                  // J x 3, meters
  std::vector<int> parents;      // root = -1, topologically ordered
  SkinWeights skin_weights;      // V rows
  std::vector<MatX3> shape_dirs; // S entries, each V x 3
  std::vector<MatX3> expr_dirs;  // E entries, each V x 3, zero off the face
  std::vector<PartLabel> part_labels;  // V entries
  MatX3 big_pose;                // J x 3 axis-angle canonical pose

  bool has_regressor = false;
  MatX joint_regressor;          // J x V when present

  bool has_uv = false;
  MatX2 face_uv;                 // 3F x 2 per-face-corner UV when present

  bool has_mirror = false;
  std::vector<int> mirror_joints;    // J entries, left/right correspondence
  std::vector<int> mirror_vertices;  // V entries

  std::map<std::string, LandmarkDef> landmarks;

  // Normalized per-joint vertex weights for the regressor-free joint rule;
  // built by validate().
  std::vector<std::vector<std::pair<int, double>>> joint_vertex_weights;

  int vertex_count() const { return static_cast<int>(vertices.rows()); }
  int face_count() const { return static_cast<int>(faces.rows()); }
  int joint_count() const { return static_cast<int>(joints.rows()); }
  int shape_dim() const { return static_cast<int>(shape_dirs.size()); }
  int expr_dim() const { return static_cast<int>(expr_dirs.size()); }

  std::vector<int> face_vertex_indices() const;
  bool is_face_vertex(int v) const { return part_labels[static_cast<size_t>(v)] == PartLabel::Face; }

  // Checks every type invariant; renormalizes skin weights; builds
  // joint_vertex_weights. Throws format-error with a field-specific message.
  void validate();
};

TemplateModel load_model(const std::string& path);
void save_model(const std::string& path, const TemplateModel& model);

}  // namespace gsav::model
