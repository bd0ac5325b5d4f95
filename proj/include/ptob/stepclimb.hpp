#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ptob/geometry.hpp"

namespace ptob {

/**
 * Quasi-static step hooking.
 *
 * World frame: step corner along y at x = 0, z = h; thread is x >= 0. The
 * wheel rests on the ground (centre height r_w) and touches the corner (or
 * the riser, for h >= r_w). The drive axis is yawed by `approach_yaw` from
 * the step edge, so the rolling direction is (cos a, -sin a, 0).
 *
 * For drive angle theta the contacting cap's pole sits theta from straight
 * down and the next cap's pole theta + 360/n. Sliding the contacting cap by
 * s along its axis lets the rest of the wheel, including the next cap's rim,
 * advance by s along that axis (sign taken toward the step). The reach is
 * the largest x of a next-rim point that is not below the thread; the cap
 * hooks when the reach is at least the hook margin.
 */

inline constexpr double kDefaultHookMargin = 6.4;        ///< mm, see README
inline constexpr double kDefaultPhaseMultiplier = 2.0;   ///< hook-margin factor at 60 deg
inline constexpr double kDefaultApproachYaw = 45.0;      ///< deg
inline constexpr double kDefaultSlideTolerance = 0.01;   ///< mm
inline constexpr double kDefaultAngleStep = 0.25;        ///< deg
inline constexpr double kNoSlide = std::numeric_limits<double>::infinity();

struct SolverSettings
{
  double slide_tolerance = kDefaultSlideTolerance;
  double angle_step_deg = kDefaultAngleStep;
  double phase_multiplier = kDefaultPhaseMultiplier;
};

struct StepScenario
{
  double height = 0.0;                       ///< mm
  double approach_yaw = kDefaultApproachYaw;  ///< deg, in [0, 90]
  double s_max = 30.0;                       ///< mm
  double phase_diff = 0.0;                   ///< deg, 0 or 60
  double hook_margin = kDefaultHookMargin;   ///< mm
  double plate_clearance = 50.0;             ///< mm

  void validate() const;
  bool operator==(const StepScenario&) const = default;
};

enum class LimitingFactor { None, SlideRange, PlateContact, Slip };

struct HookOutcome
{
  bool feasible = false;
  double required_slide = kNoSlide;  ///< mm, infinite when no slide hooks
  double hook_distance = 0.0;        ///< mm past the corner, at the available slide
  LimitingFactor limiting_factor = LimitingFactor::None;

  bool operator==(const HookOutcome&) const = default;
};

/// Horizontal distance from the wheel centre to the corner line.
double corner_standoff(double r_w, double h);

/// Best landing distance past the corner over one cap period (mm); -inf if
/// no rim point clears the thread.
double hook_reach(const WheelGeometry& geom, double h, double approach_yaw_deg, double slide,
                  const SolverSettings& settings = {});

/// Landing distance for one drive angle; the rim is maximised in closed form.
double hook_reach_at(const WheelGeometry& geom, double h, double approach_yaw_deg, double slide,
                     double drive_angle_deg);

/// Smallest slide whose reach is at least `hook_margin`; kNoSlide when even
/// s = r_w fails. Throws Infeasible for h >= 2 r_w.
double min_slide_for_hook(const WheelGeometry& geom, double h, double approach_yaw_deg,
                          double hook_margin, const SolverSettings& settings = {});

/// Hook margin after the phase penalty.
double effective_hook_margin(const StepScenario& s, const SolverSettings& settings = {});

HookOutcome hook_feasible(const WheelGeometry& geom, const StepScenario& scenario,
                          const SolverSettings& settings = {});

/// Largest step on the `resolution` grid that hooks; 0 if none.
double max_step(const WheelGeometry& geom, double s_max, double phase_diff,
                double plate_clearance, double resolution,
                double hook_margin = kDefaultHookMargin,
                double approach_yaw_deg = kDefaultApproachYaw,
                const SolverSettings& settings = {});

/// Sag of the wheel centre over a gap of width g; r_w once it falls through.
double gap_drop(double r_w, double g);

/// Gap crossing as hooking an equivalent step of height gap_drop(r_w, g).
HookOutcome gap_crossing_feasible(const WheelGeometry& geom, double g,
                                  const StepScenario& scenario,
                                  const SolverSettings& settings = {});

struct StepTableRow
{
  double s_max;
  double phase_deg;
  double max_step;
};

/// max_step over slide ranges {0, 15, 30} mm and phases {0, 60} deg.
std::vector<StepTableRow> step_table(const WheelGeometry& geom, double plate_clearance,
                                     double resolution, double hook_margin = kDefaultHookMargin,
                                     double approach_yaw_deg = kDefaultApproachYaw,
                                     const SolverSettings& settings = {});

/// Hook margins for which max_step(s_max, phase 0) equals `target`: the
/// half-open interval (lower, upper].
struct MarginInterval
{
  double lower;
  double upper;
  bool contains(double m) const { return m > lower && m <= upper; }
};

MarginInterval calibration_interval(const WheelGeometry& geom, double s_max, double target,
                                    double plate_clearance, double resolution,
                                    double approach_yaw_deg = kDefaultApproachYaw,
                                    const SolverSettings& settings = {});

const char* to_string(LimitingFactor f);
LimitingFactor limiting_factor_from_string(const std::string& s);

}  // namespace ptob
