#pragma once

#include "gsav/core/types.hpp"

namespace gsav {

// Rigid transform y = R x + t, stored as a 3x3 block plus translation.
struct Rigid {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return R * x + t; }

  // this ∘ other, i.e. apply(other.apply(x)).
  Rigid compose(const Rigid& other) const { return {R * other.R, R * other.t + t}; }

  Rigid inverse() const {
    Mat3 Rt = R.transpose();
    return {Rt, -(Rt * t)};
  }

  static Rigid identity() { return {}; }
};

// Gradient accumulator mirroring Rigid's layout.
struct RigidGrad {
  Mat3 R = Mat3::Zero();
  Vec3 t = Vec3::Zero();

  void add(const RigidGrad& g) {
    R += g.R;
    t += g.t;
  }
  bool is_zero() const { return R.isZero(0.0) && t.isZero(0.0); }
};

// Adjoint of c = a.compose(b). Accumulates into da, db.
inline void compose_backward(const Rigid& a, const Rigid& b, const RigidGrad& dc, RigidGrad& da,
                             RigidGrad& db) {
  // c.R = a.R b.R ; c.t = a.R b.t + a.t
  da.R += dc.R * b.R.transpose() + dc.t * b.t.transpose();
  da.t += dc.t;
  db.R += a.R.transpose() * dc.R;
  db.t += a.R.transpose() * dc.t;
}

// Adjoint of b = a.inverse().
inline void inverse_backward(const Rigid& a, const RigidGrad& db, RigidGrad& da) {
  // b.R = a.R^T ; b.t = -a.R^T a.t
  da.R += db.R.transpose();
  da.R -= a.t * db.t.transpose();
  da.t += -(a.R * db.t);
}

// Adjoint of y = a.apply(x). Accumulates into da and dx.
inline void apply_backward(const Rigid& a, const Vec3& x, const Vec3& dy, RigidGrad& da, Vec3& dx) {
  da.R += dy * x.transpose();
  da.t += dy;
  dx += a.R.transpose() * dy;
}

}  // namespace gsav
