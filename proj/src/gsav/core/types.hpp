#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <vector>

namespace gsav {

// All numeric work runs in double precision; images are quantized to 8-bit
// only at the PNG boundary.
using Scalar = double;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using MatX2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;
using MatX3 = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using MatX4 = Eigen::Matrix<double, Eigen::Dynamic, 4>;
using FaceMat = Eigen::Matrix<int, Eigen::Dynamic, 3>;
using IdxVec = Eigen::VectorXi;

enum class PartLabel : std::uint8_t { Body = 0, Face = 1, LeftHand = 2, RightHand = 3 };

inline bool is_hand(PartLabel l) { return l == PartLabel::LeftHand || l == PartLabel::RightHand; }

// Pinhole camera with rigid world->camera extrinsics. Pixel (row i, col j)
// samples the continuous image plane at (j + 0.5, i + 0.5).
struct Camera {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  int width = 0, height = 0;

  Vec3 to_camera(const Vec3& p) const { return rotation * p + translation; }
};

// Half-open pixel rectangle [x0,x1) x [y0,y1).
struct CropRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool empty() const { return width() <= 0 || height() <= 0; }
};

}  // namespace gsav
