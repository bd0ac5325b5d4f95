#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ptob/geometry.hpp"

namespace ptob {

template <typename Scalar>
struct TwistT
{
  Scalar vx{};     ///< mm/s, body frame
  Scalar vy{};     ///< mm/s, body frame
  Scalar omega{};  ///< rad/s

  bool operator==(const TwistT&) const = default;
};

template <typename Scalar>
struct PoseT
{
  Scalar x{};
  Scalar y{};
  Scalar heading{};  ///< rad, in (-pi, pi]

  bool operator==(const PoseT&) const = default;
};

using Twist = TwistT<double>;
using Pose = PoseT<double>;

template <typename Scalar>
using WheelSpeedsT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using WheelSpeeds = WheelSpeedsT<double>;

/// Half-diagonal of the 400 mm square wheel footprint.
inline const double kDefaultMountRadius = 200.0 * std::numbers::sqrt2;
inline constexpr double kDefaultPlateClearance = 50.0;

struct ChassisConfig
{
  int n_wheels = 4;
  double mount_radius = kDefaultMountRadius;                ///< mm
  std::vector<double> wheel_yaws{45.0, 135.0, 225.0, 315.0};  ///< deg, drive direction per wheel
  WheelGeometry geom = prototype_geometry();
  double plate_clearance = kDefaultPlateClearance;  ///< mm

  /// True for the four-wheel 45/135/225/315 layout, which uses exact 1/sqrt(2) entries.
  bool is_symmetric_x_layout() const
  {
    return n_wheels == 4 && wheel_yaws.size() == 4 && wheel_yaws[0] == 45.0 &&
           wheel_yaws[1] == 135.0 && wheel_yaws[2] == 225.0 && wheel_yaws[3] == 315.0;
  }

  void validate() const;

  bool operator==(const ChassisConfig&) const = default;
};

/// Row i is (cos yaw_i, sin yaw_i, r); rows of the 45-degree layout use exact 1/sqrt(2).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 3> mixing_matrix(const ChassisConfig& c)
{
  using std::cos;
  using std::sin;
  c.validate();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> m(c.n_wheels, 3);
  const Scalar r = static_cast<Scalar>(c.mount_radius);
  if (c.is_symmetric_x_layout()) {
    const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
    m << s, s, r,
        -s, s, r,
        -s, -s, r,
        s, -s, r;
    return m;
  }
  const Scalar deg = std::numbers::pi_v<Scalar> / Scalar(180);
  for (int i = 0; i < c.n_wheels; ++i) {
    const Scalar yaw = static_cast<Scalar>(c.wheel_yaws[i]) * deg;
    m(i, 0) = cos(yaw);
    m(i, 1) = sin(yaw);
    m(i, 2) = r;
  }
  return m;
}

/// Wheel contact speeds (mm/s) for a body twist.
template <typename Scalar>
WheelSpeedsT<Scalar> inverse_kinematics(const TwistT<Scalar>& t, const ChassisConfig& c)
{
  const auto m = mixing_matrix<Scalar>(c);
  WheelSpeedsT<Scalar> v(c.n_wheels);
  // Written out term by term so the 45-degree rows are reproduced exactly
  // (no reassociation through a vectorised product).
  for (int i = 0; i < c.n_wheels; ++i) {
    v(i) = m(i, 0) * t.vx + m(i, 1) * t.vy + m(i, 2) * t.omega;
  }
  return v;
}

template <typename Scalar>
struct ForwardResult
{
  TwistT<Scalar> twist;
  Scalar residual{};  ///< norm of the wheel-speed part outside the mixing range
};

/// Minimum-norm least-squares inverse of the mixing equation.
template <typename Scalar>
ForwardResult<Scalar> forward_kinematics(const WheelSpeedsT<Scalar>& w, const ChassisConfig& c)
{
  const auto m = mixing_matrix<Scalar>(c);
  if (w.size() != c.n_wheels) {
    throw InvalidInput("forward_kinematics: expected one speed per wheel");
  }
  const Eigen::Matrix<Scalar, 3, 1> x =
      Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<Scalar, Eigen::Dynamic, 3>>(m).solve(w);
  ForwardResult<Scalar> out;
  out.twist = {x(0), x(1), x(2)};
  out.residual = (w - m * x).norm();
  return out;
}

template <typename Scalar>
Scalar normalize_heading(Scalar a)
{
  using std::remainder;
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  a = remainder(a, two_pi);
  if (a <= -std::numbers::pi_v<Scalar>) {
    a += two_pi;
  }
  return a;
}

/**
 * Exact constant-twist step: the body displacement is rotated by the
 * midpoint heading and scaled by the arc-to-chord factor sin(x)/x with
 * x = omega*dt/2.
 */
template <typename Scalar>
PoseT<Scalar> integrate_odometry(const PoseT<Scalar>& p, const TwistT<Scalar>& t, Scalar dt)
{
  using std::abs;
  using std::cos;
  using std::sin;
  if (!(dt > Scalar(0))) {
    throw InvalidInput("integrate_odometry: dt must be positive");
  }
  const Scalar half = t.omega * dt / Scalar(2);
  const Scalar chord =
      abs(half) > Scalar(1e-6) ? sin(half) / half : Scalar(1) - half * half / Scalar(6);
  const Scalar mid = p.heading + half;
  const Scalar bx = t.vx * dt * chord;
  const Scalar by = t.vy * dt * chord;
  PoseT<Scalar> out;
  out.x = p.x + cos(mid) * bx - sin(mid) * by;
  out.y = p.y + sin(mid) * bx + cos(mid) * by;
  out.heading = normalize_heading(p.heading + Scalar(2) * half);
  return out;
}

/// True when a step of height h reaches the support plates first.
bool plate_interference(const ChassisConfig& c, double h);

}  // namespace ptob
