#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ptob/errors.hpp"

namespace ptob {

/**
 * Dimensional parameters of a spherical-cap omni wheel. Lengths in mm,
 * force in N. The caps' pole axes lie in the drive plane, equally spaced.
 */
template <typename Scalar>
struct WheelGeometryT
{
  Scalar r_w{};             ///< sphere radius
  Scalar h_s{};             ///< cap thickness along its pole axis
  Scalar d_s{};             ///< cap rim diameter
  Scalar d_a{};             ///< actuator diameter
  Scalar gap{};             ///< circumferential gap between adjacent rims
  Scalar s_max{};           ///< slide half-range of each cap unit
  Scalar k_spring_force{};  ///< maximum spring restoring force
  int n_caps = 3;

  /// Same wheel with every length multiplied by `a` (force untouched).
  WheelGeometryT scaled(Scalar a) const
  {
    WheelGeometryT g = *this;
    g.r_w *= a;
    g.h_s *= a;
    g.d_s *= a;
    g.d_a *= a;
    g.gap *= a;
    g.s_max *= a;
    return g;
  }

  template <typename Other>
  WheelGeometryT<Other> cast() const
  {
    return {static_cast<Other>(r_w), static_cast<Other>(h_s), static_cast<Other>(d_s),
            static_cast<Other>(d_a), static_cast<Other>(gap), static_cast<Other>(s_max),
            static_cast<Other>(k_spring_force), n_caps};
  }

  bool operator==(const WheelGeometryT&) const = default;
};

using WheelGeometry = WheelGeometryT<double>;

/// Table I prototype. h_s, d_s, d_a and gap are not published; these values
/// sit inside the design bounds.
inline WheelGeometry prototype_geometry()
{
  return {63.5, 30.0, 105.0, 40.0, 0.5, 30.0, 12.7, 3};
}

/// Half the angle subtended by a chord of length `gap` on the sphere (rad).
template <typename Scalar>
Scalar gap_half_angle(Scalar r_w, Scalar gap)
{
  using std::asin;
  return asin(gap / (Scalar(2) * r_w));
}

/// Cap half-angle in rad: pi/n minus half the gap's angular width.
/// Non-positive when the gap leaves no room for the caps.
template <typename Scalar>
Scalar cap_half_angle(Scalar r_w, Scalar gap, int n_caps)
{
  if (gap >= Scalar(2) * r_w) {
    return Scalar(0);
  }
  return std::numbers::pi_v<Scalar> / Scalar(n_caps) - gap_half_angle(r_w, gap);
}

template <typename Scalar>
struct CapBounds
{
  Scalar h_s_max;
  Scalar d_s_max;
};

/// Supremum cap thickness and rim diameter for which adjacent caps stay
/// apart by at least `gap`.
template <typename Scalar>
CapBounds<Scalar> max_cap_dimensions(Scalar r_w, Scalar gap, int n_caps)
{
  using std::cos;
  using std::isfinite;
  using std::sin;
  if (!isfinite(r_w) || !isfinite(gap) || r_w <= Scalar(0) || gap < Scalar(0)) {
    throw InvalidInput("max_cap_dimensions: need r_w > 0 and gap >= 0");
  }
  if (n_caps < 2) {
    throw InvalidInput("max_cap_dimensions: need at least two caps");
  }
  const Scalar beta = cap_half_angle(r_w, gap, n_caps);
  if (!(beta > Scalar(0))) {
    throw Infeasible("max_cap_dimensions: gap leaves no positive cap width");
  }
  return {r_w * (Scalar(1) - cos(beta)), Scalar(2) * r_w * sin(beta)};
}

struct ConstraintCheck
{
  std::string id;
  double bound = 0.0;
  double actual = 0.0;
  bool satisfied = false;

  double slack() const { return bound - actual; }
  bool operator==(const ConstraintCheck&) const = default;
};

struct ConstraintReport
{
  std::vector<ConstraintCheck> checks;

  bool ok() const
  {
    for (const auto& c : checks) {
      if (!c.satisfied) {
        return false;
      }
    }
    return true;
  }

  const ConstraintCheck* find(const std::string& id) const
  {
    for (const auto& c : checks) {
      if (c.id == id) {
        return &c;
      }
    }
    return nullptr;
  }

  bool operator==(const ConstraintReport&) const = default;
};

namespace constraint_id {
inline constexpr const char* kCapThickness = "cap_thickness";
inline constexpr const char* kRimDiameter = "rim_diameter";
inline constexpr const char* kActuatorFit = "actuator_fit";
inline constexpr const char* kActuatorStepRule = "actuator_step_rule";
}  // namespace constraint_id

/// Throws InvalidInput unless every field is finite, lengths are
/// nonnegative, r_w > 0 and n_caps >= 2.
template <typename Scalar>
void check_geometry_input(const WheelGeometryT<Scalar>& g)
{
  using std::isfinite;
  const Scalar fields[] = {g.r_w, g.h_s, g.d_s, g.d_a, g.gap, g.s_max, g.k_spring_force};
  for (Scalar v : fields) {
    if (!isfinite(v) || v < Scalar(0)) {
      throw InvalidInput("wheel geometry: fields must be finite and nonnegative");
    }
  }
  if (!(g.r_w > Scalar(0))) {
    throw InvalidInput("wheel geometry: r_w must be positive");
  }
  if (g.n_caps < 2) {
    throw InvalidInput("wheel geometry: n_caps must be at least 2");
  }
}

/**
 * Evaluates the cap and actuator packing constraints. All are strict
 * inequalities; a value on the bound fails. `strict_actuator` adds the
 * step-climbing actuator rule d_a < (2/3) r_w.
 */
template <typename Scalar>
ConstraintReport validate_wheel_geometry(const WheelGeometryT<Scalar>& g, bool strict_actuator)
{
  using std::cos;
  using std::sin;
  check_geometry_input(g);

  const Scalar beta = cap_half_angle(g.r_w, g.gap, g.n_caps);
  Scalar h_bound(0);
  Scalar d_bound(0);
  if (beta > Scalar(0)) {
    h_bound = g.r_w * (Scalar(1) - cos(beta));
    d_bound = Scalar(2) * g.r_w * sin(beta);
  }
  const Scalar a_bound = Scalar(2) * (g.r_w - g.h_s);

  auto record = [](const char* id, Scalar bound, Scalar actual) {
    return ConstraintCheck{id, static_cast<double>(bound), static_cast<double>(actual),
                           actual < bound};
  };

  ConstraintReport report;
  report.checks.push_back(record(constraint_id::kCapThickness, h_bound, g.h_s));
  report.checks.push_back(record(constraint_id::kRimDiameter, d_bound, g.d_s));
  report.checks.push_back(record(constraint_id::kActuatorFit, a_bound, g.d_a));
  if (strict_actuator) {
    report.checks.push_back(
        record(constraint_id::kActuatorStepRule, Scalar(2) * g.r_w / Scalar(3), g.d_a));
  }
  return report;
}

inline constexpr const char* kPlateSpacingFormula = "d_s + 2*s_max + 2*clearance";

/// Minimum support-plate spacing that keeps a fully slid cap off the plates.
template <typename Scalar>
Scalar support_plate_spacing(const WheelGeometryT<Scalar>& g, Scalar clearance)
{
  using std::isfinite;
  if (!isfinite(clearance) || clearance < Scalar(0)) {
    throw InvalidInput("support_plate_spacing: clearance must be >= 0");
  }
  return g.d_s + Scalar(2) * g.s_max + Scalar(2) * clearance;
}

}  // namespace ptob
