#pragma once

// Spin-1/2 pure states and projective spin measurements on the Bloch sphere.
//
// A pure state |u+> is represented by its unit Bloch vector u; |u-> is -u.
// For a measurement along unit axis v the Born probabilities are
// P(+) = (1 + u.v) / 2 and P(-) = 1 - P(+).

#include <array>
#include <stdexcept>
#include <string>

namespace acqf {

inline constexpr double kUnitNormTolerance = 1e-9;
inline constexpr double kOrthogonalityTolerance = 1e-9;
inline constexpr double kFrameDegeneracyTolerance = 1e-6;

struct InvalidDirection : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidFrame : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Ready frame collides with one of the measurement axes x, y, z.
struct DegenerateFrame : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unit vector on the Bloch sphere. The constructor normalizes its input and
/// rejects vectors too short to carry a direction.
class Direction3 {
 public:
  Direction3(double x, double y, double z);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

  double dot(const Direction3& other) const noexcept {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }
  Direction3 cross(const Direction3& other) const;
  Direction3 operator-() const noexcept { return Direction3(-x_, -y_, -z_, Unchecked{}); }

  friend bool operator==(const Direction3&, const Direction3&) = default;

 private:
  struct Unchecked {};
  Direction3(double x, double y, double z, Unchecked) noexcept : x_(x), y_(y), z_(z) {}

  double x_, y_, z_;
};

inline const Direction3 kAxisX{1.0, 0.0, 0.0};
inline const Direction3 kAxisY{0.0, 1.0, 0.0};
inline const Direction3 kAxisZ{0.0, 0.0, 1.0};

/// Right-handed orthonormal triple of directions with a short label per axis.
class Frame {
 public:
  Frame(Direction3 a, Direction3 b, Direction3 c, std::array<std::string, 3> labels);

  const Direction3& axis(std::size_t i) const { return axes_.at(i); }
  const std::array<Direction3, 3>& axes() const noexcept { return axes_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::array<std::string, 3>& labels() const noexcept { return labels_; }

 private:
  std::array<Direction3, 3> axes_;
  std::array<std::string, 3> labels_;
};

/// The lab frame {x, y, z}, labelled "x", "y", "z".
Frame measurement_frame();

struct Observable {
  Direction3 axis;
  std::string label;  // e.g. "Sx"
};

enum class Outcome { Plus, Minus };

const char* to_string(Outcome o) noexcept;

struct BornProbabilities {
  double p_plus;
  double p_minus;
};

/// Born rule for |ready+> measured along `axis`. p_minus is computed as
/// 1 - p_plus so the pair sums to one.
BornProbabilities born_probability(const Direction3& ready, const Direction3& axis) noexcept;

/// One Born trial: Plus iff draw < p_plus.
Outcome sample_outcome(double p_plus, double draw) noexcept;

/// Post-measurement state: axis for Plus, -axis for Minus.
Direction3 collapse(const Direction3& axis, Outcome outcome) noexcept;

/// Columns of Rx(pitch) * Rz(yaw): the lab axes rotated by `yaw` about z,
/// then by `pitch` about the lab x axis. No degeneracy check.
std::array<Direction3, 3> ready_axes(double yaw, double pitch);

/// Rotates the lab frame by `yaw` about z, then by `pitch` about the lab x axis,
/// and labels the result alpha, beta, gamma. Throws DegenerateFrame when any
/// resulting axis lies within 1e-6 (in |cos|) of x, y or z.
Frame make_ready_frame(double yaw, double pitch);

/// make_ready_frame(pi/4, pi/4).
Frame default_ready_frame();

/// Largest |a.e| over ready axes a and lab axes e.
double max_lab_alignment(const Frame& frame) noexcept;

}  // namespace acqf
