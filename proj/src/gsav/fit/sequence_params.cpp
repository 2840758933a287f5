#include "gsav/fit/sequence_params.hpp"

namespace gsav::fit {

SequenceParams SequenceParams::zeros(const model::TemplateModel& m, int frames) {
  SequenceParams s;
  s.pose.assign(static_cast<size_t>(frames), MatX3::Zero(m.joint_count(), 3));
  s.expression.assign(static_cast<size_t>(frames), VecX::Zero(m.expr_dim()));
  s.translation.assign(static_cast<size_t>(frames), Vec3::Zero());
  s.beta = VecX::Zero(m.shape_dim());
  s.joint_offset = MatX3::Zero(m.joint_count(), 3);
  s.face_offset = MatX3::Zero(m.vertex_count(), 3);
  return s;
}

void SequenceStore::reset_grad_shapes() {
  g.pose.assign(p.pose.size(), MatX3::Zero(p.joint_offset.rows(), 3));
  g.expression.clear();
  for (const auto& e : p.expression) g.expression.push_back(VecX::Zero(e.size()));
  g.translation.assign(p.translation.size(), Vec3::Zero());
  g.beta = VecX::Zero(p.beta.size());
  g.joint_offset = MatX3::Zero(p.joint_offset.rows(), 3);
  g.face_offset = MatX3::Zero(p.face_offset.rows(), 3);
}

void SequenceStore::zero_grads() {
  for (auto& m : g.pose) m.setZero();
  for (auto& e : g.expression) e.setZero();
  for (auto& t : g.translation) t.setZero();
  g.beta.setZero();
  g.joint_offset.setZero();
  g.face_offset.setZero();
}

void SequenceStore::mask_face_offset_grad(const model::TemplateModel& m) {
  for (int v = 0; v < m.vertex_count(); ++v)
    if (!m.is_face_vertex(v)) g.face_offset.row(v).setZero();
}

void SequenceStore::collect(ParamSet& set, bool include_face_offset) {
  for (size_t f = 0; f < p.pose.size(); ++f) {
    std::string suffix = std::to_string(f);
    set.add("pose" + suffix, p.pose[f].data(), g.pose[f].data(),
            static_cast<size_t>(p.pose[f].size()));
    if (p.expression[f].size() > 0)
      set.add("expression" + suffix, p.expression[f].data(), g.expression[f].data(),
              static_cast<size_t>(p.expression[f].size()));
    set.add("translation" + suffix, p.translation[f].data(), g.translation[f].data(), 3);
  }
  if (p.beta.size() > 0) set.add("beta", p.beta.data(), g.beta.data(),
                                 static_cast<size_t>(p.beta.size()));
  set.add("joint_offset", p.joint_offset.data(), g.joint_offset.data(),
          static_cast<size_t>(p.joint_offset.size()));
  if (include_face_offset)
    set.add("face_offset", p.face_offset.data(), g.face_offset.data(),
            static_cast<size_t>(p.face_offset.size()));
}

}  // namespace gsav::fit
