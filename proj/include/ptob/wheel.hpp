#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "ptob/geometry.hpp"

namespace ptob {

/**
 * Angular layout of the caps around the drive axis. Drive angle 0 is the
 * cap-0 pole; angles increase in the rolling direction. Each cap period is
 * split into a roller band around the pole, an edge band around the rim
 * boundary (period midpoint) and cap surface in between.
 */
struct CapLayout
{
  int n_caps = 3;
  std::vector<double> pole_angles_deg{0.0, 120.0, 240.0};
  double beta_deg = 60.0;
  double roller_window_deg = 10.0;
  double edge_window_deg = 4.0;

  double period_deg() const { return 360.0 / n_caps; }
  void validate() const;

  bool operator==(const CapLayout&) const = default;
};

inline constexpr double kDefaultRollerWindowDeg = 10.0;
inline constexpr double kDefaultEdgeWindowDeg = 4.0;
/// N*s/mm; with 12.7 N this gives a ~50 mm/s return rate.
inline constexpr double kDefaultSlideDamping = 0.25;

CapLayout make_layout(const WheelGeometry& geom,
                      double roller_window_deg = kDefaultRollerWindowDeg,
                      double edge_window_deg = kDefaultEdgeWindowDeg);

enum class ElementKind { CapSurface, BarrelRoller, EdgeGap };

/// `first` is the cap index; for EdgeGap, `second` is the following cap.
struct SurfaceElement
{
  ElementKind kind = ElementKind::CapSurface;
  int first = 0;
  int second = -1;

  static SurfaceElement cap(int i) { return {ElementKind::CapSurface, i, -1}; }
  static SurfaceElement roller(int i) { return {ElementKind::BarrelRoller, i, -1}; }
  static SurfaceElement edge(int i, int j) { return {ElementKind::EdgeGap, i, j}; }

  bool operator==(const SurfaceElement&) const = default;
};

/// Contact frame: x along the rolling direction, y along the drive axis, z up.
struct ContactPoint
{
  SurfaceElement element;
  double drive_angle_deg = 0.0;
  double height_deviation = 0.0;  ///< mm, <= 0
  Eigen::Vector3d axial_free_dir = Eigen::Vector3d::UnitX();
};

struct SlideUnit
{
  double offset = 0.0;        ///< mm, in [-s_max, s_max]
  double s_max = 0.0;         ///< mm
  double restore_rate = 0.0;  ///< mm/s
  bool loaded = false;

  bool operator==(const SlideUnit&) const = default;
};

SlideUnit make_slide_unit(const WheelGeometry& geom, double damping = kDefaultSlideDamping);
std::vector<SlideUnit> centered_slides(const WheelGeometry& geom,
                                       double damping = kDefaultSlideDamping);

/// Drive angle wrapped into [0, 360).
double wrap_degrees(double angle_deg);

SurfaceElement active_element(const CapLayout& layout, double drive_angle_deg);

/// Sag of a rigid sphere of radius `r` resting across a gap of width `w`;
/// saturates at r once the sphere falls through.
double chord_sag(double r, double w);

/// Effective gap width at the rim boundary between caps i and j.
double edge_gap_width(const WheelGeometry& geom, const CapLayout& layout,
                      const SlideUnit& a, const SlideUnit& b);

ContactPoint contact_state(const WheelGeometry& geom, const CapLayout& layout,
                           double drive_angle_deg, std::span<const SlideUnit> slides);

/// Loaded: integrate axial_drive and clamp to +-s_max. Unloaded: linear
/// return to centre at restore_rate without overshoot.
SlideUnit slide_step(SlideUnit unit, double axial_drive, double dt);

struct ProfileSample
{
  double angle_deg;
  double height_dev;
};

std::vector<ProfileSample> contact_height_profile(const WheelGeometry& geom,
                                                  const CapLayout& layout, int n_samples,
                                                  std::span<const SlideUnit> slides);

}  // namespace ptob
