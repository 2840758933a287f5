#pragma once

#include <string>
#include <vector>

#include "gsav/core/types.hpp"
#include "gsav/field/mlp.hpp"
#include "gsav/field/triplane.hpp"

namespace gsav::field {

struct FieldConfig {
  int channels = 8;
  int body_res = 32;
  int face_res = 32;
  int hidden = 128;
  int gn_groups = 8;
  double box_margin = 0.1;
  std::uint64_t seed = 1;
};

struct StaticAssets {
  MatX3 dv_tri;  // per-vertex canonical offset
  VecX s_tri;    // log-scale
  MatX3 c_tri;   // sigmoid color in [0,1]
};

struct PoseAssets {
  MatX3 dv_pose;
  VecX ds_pose;
  MatX3 dc_pose;
};

struct FieldCache {
  MatX features;  // 3C x N
  MlpCache geo, color, pose_geo, pose_color;
  MatX color_raw;  // pre-sigmoid
  bool has_pose_geo = false;
  bool has_pose_color = false;
  MatX pose_geo_in, pose_color_in;
};

// Triplane feature fields plus four shared MLP heads regressing per-vertex
// Gaussian assets at the frozen positional-encoding mesh. Face-labeled
// vertices sample only the face triplane, all others only the body triplane.
class AvatarField {
 public:
  FieldConfig cfg;
  Triplane body_plane, face_plane;
  Mlp geo_mlp, color_mlp, pose_geo_mlp, pose_color_mlp;
  MatX3 pe_points;                // frozen after construction
  std::vector<PartLabel> labels;  // routing
  std::vector<int> face_rows, body_rows;
  int pose_dim = 0;  // (J - 1) * 3

  // init_scale sets the scale-head bias so the initial world scale matches
  // the canonical mesh's mean edge length.
  static AvatarField create(const MatX3& pe_points, const std::vector<PartLabel>& labels,
                            int joint_count, const FieldConfig& cfg, double init_scale);

  int vertex_count() const { return static_cast<int>(pe_points.rows()); }
  int feature_dim() const { return 3 * cfg.channels; }

  MatX sample_features() const;
  void features_backward(const MatX& d_features);

  StaticAssets regress_static(FieldCache& cache) const;
  // The pose-dependent geometry head runs before the color head: per-vertex
  // normals of the deformed canonical points feed the color conditioning.
  void regress_pose_geo(FieldCache& cache, const VecX& pose_no_root, MatX3& dv_pose,
                        VecX& ds_pose) const;
  MatX3 regress_pose_color(FieldCache& cache, const MatX3& normals) const;

  // Accumulates parameter gradients. Pose gradients may be null when
  // regress_pose was not run. d_pose_out / d_normals_out are optional sinks
  // for input gradients of the pose heads.
  void backward(FieldCache& cache, const MatX3& d_dv_tri, const VecX& d_s_tri, const MatX3& d_c_tri,
                const MatX3* d_dv_pose, const VecX* d_ds_pose, const MatX3* d_dc_pose,
                VecX* d_pose_out, MatX3* d_normals_out);

  void zero_grad();

  template <typename Fn>
  void visit_params(Fn&& fn) {
    for (int p = 0; p < 3; ++p) {
      fn("body_plane" + std::to_string(p), body_plane.planes[p].data(),
         body_plane.grads[p].data(), static_cast<size_t>(body_plane.planes[p].size()));
      fn("face_plane" + std::to_string(p), face_plane.planes[p].data(),
         face_plane.grads[p].data(), static_cast<size_t>(face_plane.planes[p].size()));
    }
    auto wrap = [&](const std::string& prefix, Mlp& mlp) {
      mlp.visit_params([&](const std::string& name, double* v, double* g, size_t n) {
        fn(prefix + "." + name, v, g, n);
      });
    };
    wrap("geo", geo_mlp);
    wrap("color", color_mlp);
    wrap("pose_geo", pose_geo_mlp);
    wrap("pose_color", pose_color_mlp);
  }
};

}  // namespace gsav::field
