#pragma once

#include <vector>

#include "gsav/core/types.hpp"
#include "gsav/fit/adam.hpp"
#include "gsav/model/template_model.hpp"

namespace gsav::fit {

// Per-frame pose/expression/translation plus the shared identity parameters.
struct SequenceParams {
  std::vector<MatX3> pose;         // J x 3 axis-angle per frame
  std::vector<VecX> expression;    // E per frame
  std::vector<Vec3> translation;   // per frame
  VecX beta;                       // shared shape
  MatX3 joint_offset;              // shared, J x 3
  MatX3 face_offset;               // shared, V x 3, zero off the face

  int frames() const { return static_cast<int>(pose.size()); }

  static SequenceParams zeros(const model::TemplateModel& m, int frames);
};

// Parameters plus mirrored gradient storage, exposing Adam blocks.
struct SequenceStore {
  SequenceParams p;
  SequenceParams g;

  explicit SequenceStore(SequenceParams params) : p(std::move(params)) { reset_grad_shapes(); }

  void reset_grad_shapes();
  void zero_grads();
  // Zeroes gradient rows of face_offset outside the face label set, keeping
  // the off-face entries pinned at zero.
  void mask_face_offset_grad(const model::TemplateModel& m);

  void collect(ParamSet& set, bool include_face_offset);
};

}  // namespace gsav::fit
