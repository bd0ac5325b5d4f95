#include "ptob/stepclimb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "ptob/wheel.hpp"

namespace ptob {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

void check_height(const WheelGeometry& geom, double h)
{
  if (!std::isfinite(h) || h < 0.0) {
    throw InvalidInput("step height must be finite and >= 0");
  }
  if (h >= 2.0 * geom.r_w) {
    throw Infeasible("step is at least as tall as the wheel");
  }
}

void check_rim(const WheelGeometry& geom)
{
  check_geometry_input(geom);
  if (!(geom.d_s < 2.0 * geom.r_w)) {
    throw InvalidInput("rim diameter must be below the wheel diameter");
  }
}

// Golden-section maximisation of hook_reach_at over [lo, hi].
double refine_max(const WheelGeometry& geom, double h, double yaw, double slide, double lo,
                  double hi)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double th) { return hook_reach_at(geom, h, yaw, slide, th); };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-7) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

void StepScenario::validate() const
{
  if (!std::isfinite(height) || height < 0.0) {
    throw InvalidInput("step scenario: height must be >= 0");
  }
  if (!(approach_yaw >= 0.0 && approach_yaw <= 90.0)) {
    throw InvalidInput("step scenario: approach_yaw must lie in [0, 90] deg");
  }
  if (!std::isfinite(s_max) || s_max < 0.0) {
    throw InvalidInput("step scenario: s_max must be >= 0");
  }
  if (phase_diff != 0.0 && phase_diff != 60.0) {
    throw InvalidInput("step scenario: phase_diff must be 0 or 60 deg");
  }
  if (!std::isfinite(hook_margin) || hook_margin < 0.0) {
    throw InvalidInput("step scenario: hook_margin must be >= 0");
  }
  if (!std::isfinite(plate_clearance) || plate_clearance < 0.0) {
    throw InvalidInput("step scenario: plate_clearance must be >= 0");
  }
}

double corner_standoff(double r_w, double h)
{
  if (h >= r_w) {
    return r_w;
  }
  const double dz = r_w - h;
  return std::sqrt(std::max(0.0, r_w * r_w - dz * dz));
}

double hook_reach_at(const WheelGeometry& geom, double h, double approach_yaw_deg, double slide,
                     double drive_angle_deg)
{
  const double yaw = approach_yaw_deg * kDegToRad;
  const Eigen::Vector3d up = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d roll(std::cos(yaw), -std::sin(yaw), 0.0);
  const Eigen::Vector3d axle(std::sin(yaw), std::cos(yaw), 0.0);

  const double phi0 = drive_angle_deg * kDegToRad;
  const double phi1 = phi0 + 2.0 * std::numbers::pi / geom.n_caps;
  const Eigen::Vector3d p0 = -std::cos(phi0) * up + std::sin(phi0) * roll;
  const Eigen::Vector3d p1 = -std::cos(phi1) * up + std::sin(phi1) * roll;
  const Eigen::Vector3d t1 = std::cos(phi1) * roll + std::sin(phi1) * up;
  const Eigen::Vector3d advance = p0.x() >= 0.0 ? p0 : Eigen::Vector3d(-p0);

  const double rho = 0.5 * geom.d_s;
  const double plane = std::sqrt(geom.r_w * geom.r_w - rho * rho);
  const Eigen::Vector3d centre(-corner_standoff(geom.r_w, h), 0.0, geom.r_w);
  const Eigen::Vector3d c = centre + slide * advance + plane * p1;

  // Rim: c + rho (cos psi * axle + sin psi * t1).
  const double ax = rho * axle.x();
  const double bx = rho * t1.x();
  const double bz = rho * t1.z();
  auto x_at = [&](double psi) { return c.x() + ax * std::cos(psi) + bx * std::sin(psi); };

  const double amp = std::hypot(ax, bx);
  const double psi_star = amp > 0.0 ? std::atan2(bx, ax) : 0.0;
  if (c.z() + bz * std::sin(psi_star) >= h) {
    return c.x() + amp;
  }
  if (std::abs(bz) < 1e-15) {
    return kMinusInf;
  }
  const double ratio = (h - c.z()) / bz;
  if (ratio > 1.0 || ratio < -1.0) {
    return kMinusInf;
  }
  const double psi_a = std::asin(ratio);
  const double psi_b = std::numbers::pi - psi_a;
  return std::max(x_at(psi_a), x_at(psi_b));
}

double hook_reach(const WheelGeometry& geom, double h, double approach_yaw_deg, double slide,
                  const SolverSettings& settings)
{
  const double period = 360.0 / geom.n_caps;
  const int n = std::max(2, static_cast<int>(std::ceil(period / settings.angle_step_deg)));
  const double step = period / n;

  std::vector<double> values(n + 1);
  for (int k = 0; k <= n; ++k) {
    values[k] = hook_reach_at(geom, h, approach_yaw_deg, slide, k * step);
  }

  // Refine around the three best local maxima of the grid.
  std::array<int, 3> top{-1, -1, -1};
  for (int k = 0; k <= n; ++k) {
    const double left = k > 0 ? values[k - 1] : kMinusInf;
    const double right = k < n ? values[k + 1] : kMinusInf;
    if (!(values[k] >= left && values[k] >= right) || values[k] == kMinusInf) {
      continue;
    }
    for (int slot = 0; slot < 3; ++slot) {
      if (top[slot] < 0 || values[k] > values[top[slot]]) {
        for (int m = 2; m > slot; --m) {
          top[m] = top[m - 1];
        }
        top[slot] = k;
        break;
      }
    }
  }

  double best = *std::max_element(values.begin(), values.end());
  for (int k : top) {
    if (k < 0) {
      continue;
    }
    const double lo = std::max(0.0, (k - 1) * step);
    const double hi = std::min(period, (k + 1) * step);
    best = std::max(best, refine_max(geom, h, approach_yaw_deg, slide, lo, hi));
  }
  return best;
}

double min_slide_for_hook(const WheelGeometry& geom, double h, double approach_yaw_deg,
                          double hook_margin, const SolverSettings& settings)
{
  check_rim(geom);
  check_height(geom, h);
  if (!std::isfinite(hook_margin) || hook_margin < 0.0) {
    throw InvalidInput("min_slide_for_hook: hook margin must be >= 0");
  }
  auto hooks = [&](double s) {
    return hook_reach(geom, h, approach_yaw_deg, s, settings) >= hook_margin;
  };
  if (hooks(0.0)) {
    return 0.0;
  }
  double hi = geom.r_w;
  if (!hooks(hi)) {
    return kNoSlide;
  }
  double lo = 0.0;
  while (hi - lo > settings.slide_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (hooks(mid) ? hi : lo) = mid;
  }
  return hi;
}

double effective_hook_margin(const StepScenario& s, const SolverSettings& settings)
{
  return s.phase_diff == 60.0 ? s.hook_margin * settings.phase_multiplier : s.hook_margin;
}

HookOutcome hook_feasible(const WheelGeometry& geom, const StepScenario& scenario,
                          const SolverSettings& settings)
{
  check_rim(geom);
  scenario.validate();
  const double h = scenario.height;
  const bool plate = h >= scenario.plate_clearance;

  HookOutcome out;
  if (h >= 2.0 * geom.r_w) {
    out.hook_distance = kMinusInf;
    out.limiting_factor = plate ? LimitingFactor::PlateContact : LimitingFactor::Slip;
    return out;
  }

  const double margin = effective_hook_margin(scenario, settings);
  out.hook_distance = hook_reach(geom, h, scenario.approach_yaw, scenario.s_max, settings);
  out.required_slide = min_slide_for_hook(geom, h, scenario.approach_yaw, margin, settings);
  const bool hooks = out.hook_distance >= margin;
  if (hooks) {
    out.required_slide = std::min(out.required_slide, scenario.s_max);
  }
  out.feasible = hooks && !plate;
  if (plate) {
    out.limiting_factor = LimitingFactor::PlateContact;
  } else if (!hooks) {
    out.limiting_factor =
        std::isinf(out.required_slide) ? LimitingFactor::Slip : LimitingFactor::SlideRange;
  }
  return out;
}

double max_step(const WheelGeometry& geom, double s_max, double phase_diff,
                double plate_clearance, double resolution, double hook_margin,
                double approach_yaw_deg, const SolverSettings& settings)
{
  if (!std::isfinite(resolution) || !(resolution > 0.0)) {
    throw InvalidInput("max_step: resolution must be positive");
  }
  StepScenario sc;
  sc.approach_yaw = approach_yaw_deg;
  sc.s_max = s_max;
  sc.phase_diff = phase_diff;
  sc.hook_margin = hook_margin;
  sc.plate_clearance = plate_clearance;

  double best = 0.0;
  for (int k = 1;; ++k) {
    sc.height = k * resolution;
    if (sc.height >= 2.0 * geom.r_w) {
      break;
    }
    if (hook_feasible(geom, sc, settings).feasible) {
      best = sc.height;
    }
  }
  return best;
}

double gap_drop(double r_w, double g)
{
  if (!std::isfinite(g) || g < 0.0) {
    throw InvalidInput("gap_drop: gap must be >= 0");
  }
  if (!(r_w > 0.0)) {
    throw InvalidInput("gap_drop: r_w must be positive");
  }
  return chord_sag(r_w, g);
}

HookOutcome gap_crossing_feasible(const WheelGeometry& geom, double g,
                                  const StepScenario& scenario, const SolverSettings& settings)
{
  const double drop = gap_drop(geom.r_w, g);
  if (drop >= geom.r_w) {
    HookOutcome out;
    out.hook_distance = kMinusInf;
    out.limiting_factor = LimitingFactor::Slip;
    return out;
  }
  StepScenario equivalent = scenario;
  equivalent.height = drop;
  return hook_feasible(geom, equivalent, settings);
}

std::vector<StepTableRow> step_table(const WheelGeometry& geom, double plate_clearance,
                                     double resolution, double hook_margin,
                                     double approach_yaw_deg, const SolverSettings& settings)
{
  std::vector<StepTableRow> rows;
  for (double s : {0.0, 15.0, 30.0}) {
    for (double phase : {0.0, 60.0}) {
      rows.push_back({s, phase,
                      max_step(geom, s, phase, plate_clearance, resolution, hook_margin,
                               approach_yaw_deg, settings)});
    }
  }
  return rows;
}

MarginInterval calibration_interval(const WheelGeometry& geom, double s_max, double target,
                                    double plate_clearance, double resolution,
                                    double approach_yaw_deg, const SolverSettings& settings)
{
  check_rim(geom);
  if (!(resolution > 0.0)) {
    throw InvalidInput("calibration_interval: resolution must be positive");
  }
  MarginInterval iv{0.0, 0.0};
  if (target >= plate_clearance) {
    return iv;
  }
  iv.upper = std::max(0.0, hook_reach(geom, target, approach_yaw_deg, s_max, settings));
  for (int k = 1;; ++k) {
    const double h = k * resolution;
    if (h >= 2.0 * geom.r_w || h >= plate_clearance) {
      break;
    }
    if (h > target + 1e-9) {
      iv.lower = std::max(iv.lower, hook_reach(geom, h, approach_yaw_deg, s_max, settings));
    }
  }
  iv.lower = std::min(iv.lower, iv.upper);
  return iv;
}

const char* to_string(LimitingFactor f)
{
  switch (f) {
    case LimitingFactor::None:
      return "None";
    case LimitingFactor::SlideRange:
      return "SlideRange";
    case LimitingFactor::PlateContact:
      return "PlateContact";
    case LimitingFactor::Slip:
      return "Slip";
  }
  return "None";
}

LimitingFactor limiting_factor_from_string(const std::string& s)
{
  for (auto f : {LimitingFactor::None, LimitingFactor::SlideRange, LimitingFactor::PlateContact,
                 LimitingFactor::Slip}) {
    if (s == to_string(f)) {
      return f;
    }
  }
  throw InvalidInput("unknown limiting factor: " + s);
}

}  // namespace ptob
