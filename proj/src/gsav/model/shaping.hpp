#pragma once

#include "gsav/core/types.hpp"
#include "gsav/model/template_model.hpp"

namespace gsav::model {

struct ShapedTemplate {
  MatX3 rest_vertices;  // template + shape_dirs . beta + face_offset
  MatX3 rest_joints;    // regressed or displaced stored joints, + joint_offset
};

// T-pose body under shape code, joint offset and face offset. Joint positions
// come from the joint regressor when the model carries one, otherwise from
// the stored joints displaced by the mean shape displacement of their skinned
// vertices.
ShapedTemplate shaped_template(const TemplateModel& model, const VecX& shape,
                               const MatX3& joint_offset, const MatX3& face_offset);

struct ShapingGrads {
  VecX d_shape;
  MatX3 d_joint_offset;
  MatX3 d_face_offset;  // masked to face-labeled rows
};

ShapingGrads shaped_template_backward(const TemplateModel& model, const MatX3& d_rest_vertices,
                                      const MatX3& d_rest_joints);

// expr_dirs . psi; exactly zero on non-face vertices.
MatX3 expression_offsets(const TemplateModel& model, const VecX& expression);

VecX expression_offsets_backward(const TemplateModel& model, const MatX3& d_offsets);

}  // namespace gsav::model
