#include "sceneest/pose.hpp"

#include <cmath>
#include <numbers>

namespace sceneest {

Pose6D::Pose6D(const Eigen::Vector3d& t, const Eigen::Quaterniond& q)
    : translation(t), orientation(q.normalized()) {}

Pose6D Pose6D::translate(double x, double y, double z) {
  return {Eigen::Vector3d(x, y, z), Eigen::Quaterniond::Identity()};
}

Pose6D Pose6D::from_rpy(const Eigen::Vector3d& t, double roll, double pitch,
                        double yaw) {
  const Eigen::Quaterniond q =
      Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
      Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
      Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX());
  return {t, q};
}

Eigen::Vector3d Pose6D::rpy() const {
  const Eigen::Quaterniond& q = orientation;
  const double sinp = 2.0 * (q.w() * q.y() - q.z() * q.x());
  const double pitch =
      std::asin(std::clamp(sinp, -1.0, 1.0));
  const double roll = std::atan2(2.0 * (q.w() * q.x() + q.y() * q.z()),
                                 1.0 - 2.0 * (q.x() * q.x() + q.y() * q.y()));
  const double yaw = std::atan2(2.0 * (q.w() * q.z() + q.x() * q.y()),
                                1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z()));
  return {roll, pitch, yaw};
}

Eigen::Vector3d Pose6D::apply(const Eigen::Vector3d& p) const {
  return orientation * p + translation;
}

Eigen::Matrix4d Pose6D::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = orientation.toRotationMatrix();
  m.topRightCorner<3, 1>() = translation;
  return m;
}

Pose6D compose(const Pose6D& a, const Pose6D& b) {
  return {a.orientation * b.translation + a.translation,
          a.orientation * b.orientation};
}

Pose6D invert(const Pose6D& p) {
  const Eigen::Quaterniond qi = p.orientation.conjugate();
  return {qi * (-p.translation), qi};
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const double d = std::min(1.0, std::abs(a.normalized().dot(b.normalized())));
  return 2.0 * std::acos(d);
}

Eigen::Vector3d rpy_error(const Eigen::Quaterniond& estimate,
                          const Eigen::Quaterniond& truth) {
  const Eigen::Vector3d e = Pose6D({0, 0, 0}, estimate).rpy();
  const Eigen::Vector3d t = Pose6D({0, 0, 0}, truth).rpy();
  return {std::abs(wrap_angle(e.x() - t.x())),
          std::abs(wrap_angle(e.y() - t.y())),
          std::abs(wrap_angle(e.z() - t.z()))};
}

Pose6D look_at(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
               const Eigen::Vector3d& up) {
  const Eigen::Vector3d forward = (target - eye).normalized();
  Eigen::Vector3d right = forward.cross(up);
  if (right.squaredNorm() < 1e-12) {
    right = forward.cross(Eigen::Vector3d(0, 1, 0));
  }
  right.normalize();
  const Eigen::Vector3d down = forward.cross(right);
  Eigen::Matrix3d rot;
  rot.col(0) = right;
  rot.col(1) = down;
  rot.col(2) = forward;
  return {eye, Eigen::Quaterniond(rot)};
}

}  // namespace sceneest
