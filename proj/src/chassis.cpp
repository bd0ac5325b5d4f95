#include "ptob/chassis.hpp"

namespace ptob {

void ChassisConfig::validate() const
{
  if (n_wheels < 3 || static_cast<int>(wheel_yaws.size()) != n_wheels) {
    throw InvalidInput("chassis: need at least 3 wheels and one yaw per wheel");
  }
  if (!std::isfinite(mount_radius) || !(mount_radius > 0.0)) {
    throw InvalidInput("chassis: mount_radius must be positive");
  }
  if (!std::isfinite(plate_clearance) || plate_clearance < 0.0) {
    throw InvalidInput("chassis: plate_clearance must be >= 0");
  }
  const double spacing = 360.0 / n_wheels;
  for (int i = 1; i < n_wheels; ++i) {
    const double d = std::remainder(wheel_yaws[i] - wheel_yaws[0] - i * spacing, 360.0);
    if (std::abs(d) > 1e-9) {
      throw InvalidInput("chassis: wheel yaws must be equally spaced");
    }
  }
}

bool plate_interference(const ChassisConfig& c, double h)
{
  if (!std::isfinite(h) || h < 0.0) {
    throw InvalidInput("plate_interference: h must be >= 0");
  }
  return h >= c.plate_clearance;
}

template WheelSpeeds inverse_kinematics(const Twist&, const ChassisConfig&);
template ForwardResult<double> forward_kinematics(const WheelSpeeds&, const ChassisConfig&);
template Pose integrate_odometry(const Pose&, const Twist&, double);

}  // namespace ptob
