#include "acqf/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace acqf {

Direction3::Direction3(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm < 1e-12) {
    throw InvalidDirection("direction vector has zero or non-finite length");
  }
  x_ = x / norm;
  y_ = y / norm;
  z_ = z / norm;
}

Direction3 Direction3::cross(const Direction3& o) const {
  return Direction3(y_ * o.z_ - z_ * o.y_, z_ * o.x_ - x_ * o.z_, x_ * o.y_ - y_ * o.x_);
}

Frame::Frame(Direction3 a, Direction3 b, Direction3 c, std::array<std::string, 3> labels)
    : axes_{a, b, c}, labels_(std::move(labels)) {
  if (std::abs(a.dot(b)) >= kOrthogonalityTolerance ||
      std::abs(a.dot(c)) >= kOrthogonalityTolerance ||
      std::abs(b.dot(c)) >= kOrthogonalityTolerance) {
    throw InvalidFrame("frame axes are not mutually orthogonal");
  }
  // a x b is a unit vector here, so the triple product is well defined.
  const double triple = (a.y() * b.z() - a.z() * b.y()) * c.x() +
                        (a.z() * b.x() - a.x() * b.z()) * c.y() +
                        (a.x() * b.y() - a.y() * b.x()) * c.z();
  if (triple <= 0.0) throw InvalidFrame("frame is left-handed");
  for (std::size_t i = 0; i < 3; ++i) {
    if (labels_[i].empty()) throw InvalidFrame("frame label is empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) throw InvalidFrame("frame labels are not distinct: " + labels_[i]);
    }
  }
}

Frame measurement_frame() { return Frame(kAxisX, kAxisY, kAxisZ, {"x", "y", "z"}); }

const char* to_string(Outcome o) noexcept { return o == Outcome::Plus ? "P" : "M"; }

BornProbabilities born_probability(const Direction3& ready, const Direction3& axis) noexcept {
  const double p_plus = std::clamp(0.5 * (1.0 + ready.dot(axis)), 0.0, 1.0);
  return {p_plus, 1.0 - p_plus};
}

Outcome sample_outcome(double p_plus, double draw) noexcept {
  return draw < p_plus ? Outcome::Plus : Outcome::Minus;
}

Direction3 collapse(const Direction3& axis, Outcome outcome) noexcept {
  return outcome == Outcome::Plus ? axis : -axis;
}

std::array<Direction3, 3> ready_axes(double yaw, double pitch) {
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  // Rz(yaw) e_x = (cy, sy, 0), e_y = (-sy, cy, 0), e_z = (0, 0, 1); then Rx(pitch).
  return {Direction3(cy, sy * cp, sy * sp), Direction3(-sy, cy * cp, cy * sp),
          Direction3(0.0, -sp, cp)};
}

double max_lab_alignment(const Frame& frame) noexcept {
  double worst = 0.0;
  for (const auto& a : frame.axes()) {
    worst = std::max({worst, std::abs(a.x()), std::abs(a.y()), std::abs(a.z())});
  }
  return worst;
}

Frame make_ready_frame(double yaw, double pitch) {
  const auto axes = ready_axes(yaw, pitch);
  Frame frame(axes[0], axes[1], axes[2], {"alpha", "beta", "gamma"});
  if (max_lab_alignment(frame) > 1.0 - kFrameDegeneracyTolerance) {
    throw DegenerateFrame("ready frame coincides with a measurement axis");
  }
  return frame;
}

Frame default_ready_frame() {
  return make_ready_frame(std::numbers::pi / 4.0, std::numbers::pi / 4.0);
}

}  // namespace acqf
