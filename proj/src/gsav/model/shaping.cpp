#include "gsav/model/shaping.hpp"

#include "gsav/core/error.hpp"

namespace gsav::model {

ShapedTemplate shaped_template(const TemplateModel& model, const VecX& shape,
                               const MatX3& joint_offset, const MatX3& face_offset) {
  require(shape.size() == model.shape_dim(), ErrorKind::Dimension,
          "shape code length " + std::to_string(shape.size()) + " does not match S=" +
              std::to_string(model.shape_dim()));
  require(joint_offset.rows() == model.joint_count(), ErrorKind::Dimension,
          "joint offset rows do not match joint count");
  require(face_offset.rows() == model.vertex_count(), ErrorKind::Dimension,
          "face offset rows do not match vertex count");

  ShapedTemplate out;
  out.rest_vertices = model.vertices + face_offset;
  for (int s = 0; s < model.shape_dim(); ++s)
    out.rest_vertices += shape[s] * model.shape_dirs[static_cast<size_t>(s)];

  if (model.has_regressor) {
    out.rest_joints = model.joint_regressor * out.rest_vertices;
  } else {
    MatX3 displacement = out.rest_vertices - model.vertices;
    out.rest_joints = model.joints;
    for (int j = 0; j < model.joint_count(); ++j)
      for (const auto& [v, w] : model.joint_vertex_weights[static_cast<size_t>(j)])
        out.rest_joints.row(j) += w * displacement.row(v);
  }
  out.rest_joints += joint_offset;
  return out;
}

ShapingGrads shaped_template_backward(const TemplateModel& model, const MatX3& d_rest_vertices,
                                      const MatX3& d_rest_joints) {
  ShapingGrads g;
  g.d_joint_offset = d_rest_joints;

  MatX3 d_verts = d_rest_vertices;
  if (model.has_regressor) {
    d_verts += model.joint_regressor.transpose() * d_rest_joints;
  } else {
    for (int j = 0; j < model.joint_count(); ++j)
      for (const auto& [v, w] : model.joint_vertex_weights[static_cast<size_t>(j)])
        d_verts.row(v) += w * d_rest_joints.row(j);
  }

  g.d_shape.setZero(model.shape_dim());
  for (int s = 0; s < model.shape_dim(); ++s)
    g.d_shape[s] = (model.shape_dirs[static_cast<size_t>(s)].array() * d_verts.array()).sum();

  g.d_face_offset = d_verts;
  for (int v = 0; v < model.vertex_count(); ++v)
    if (!model.is_face_vertex(v)) g.d_face_offset.row(v).setZero();
  return g;
}

MatX3 expression_offsets(const TemplateModel& model, const VecX& expression) {
  require(expression.size() == model.expr_dim(), ErrorKind::Dimension,
          "expression code length " + std::to_string(expression.size()) + " does not match E=" +
              std::to_string(model.expr_dim()));
  MatX3 out = MatX3::Zero(model.vertex_count(), 3);
  for (int e = 0; e < model.expr_dim(); ++e)
    out += expression[e] * model.expr_dirs[static_cast<size_t>(e)];
  return out;
}

VecX expression_offsets_backward(const TemplateModel& model, const MatX3& d_offsets) {
  VecX d_psi = VecX::Zero(model.expr_dim());
  for (int e = 0; e < model.expr_dim(); ++e)
    d_psi[e] = (model.expr_dirs[static_cast<size_t>(e)].array() * d_offsets.array()).sum();
  return d_psi;
}

}  // namespace gsav::model
