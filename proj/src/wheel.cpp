#include "ptob/wheel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ptob {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Signed angle from `from` to `to`, wrapped into (-180, 180].
double angle_between_deg(double from, double to)
{
  double d = std::remainder(to - from, 360.0);
  if (d <= -180.0) {
    d += 360.0;
  }
  return d;
}

}  // namespace

void CapLayout::validate() const
{
  if (n_caps < 2 || static_cast<int>(pole_angles_deg.size()) != n_caps) {
    throw InvalidInput("cap layout: need n_caps >= 2 and one pole angle per cap");
  }
  const double period = period_deg();
  for (int i = 0; i < n_caps; ++i) {
    const double expected = pole_angles_deg[0] + i * period;
    if (std::abs(angle_between_deg(expected, pole_angles_deg[i])) > 1e-9) {
      throw InvalidInput("cap layout: pole angles must be equally spaced");
    }
  }
  if (!(roller_window_deg >= 0.0) || !(edge_window_deg >= 0.0)) {
    throw InvalidInput("cap layout: windows must be nonnegative");
  }
  if (!(roller_window_deg + edge_window_deg < beta_deg)) {
    throw InvalidInput("cap layout: roller_window + edge_window must be below the cap half-angle");
  }
}

CapLayout make_layout(const WheelGeometry& geom, double roller_window_deg,
                      double edge_window_deg)
{
  check_geometry_input(geom);
  CapLayout layout;
  layout.n_caps = geom.n_caps;
  layout.pole_angles_deg.resize(geom.n_caps);
  for (int i = 0; i < geom.n_caps; ++i) {
    layout.pole_angles_deg[i] = i * layout.period_deg();
  }
  layout.beta_deg = cap_half_angle(geom.r_w, geom.gap, geom.n_caps) / kDegToRad;
  layout.roller_window_deg = roller_window_deg;
  layout.edge_window_deg = edge_window_deg;
  layout.validate();
  return layout;
}

SlideUnit make_slide_unit(const WheelGeometry& geom, double damping)
{
  if (!(damping > 0.0)) {
    throw InvalidInput("slide unit: damping must be positive");
  }
  return {0.0, geom.s_max, geom.k_spring_force / damping, false};
}

std::vector<SlideUnit> centered_slides(const WheelGeometry& geom, double damping)
{
  return std::vector<SlideUnit>(geom.n_caps, make_slide_unit(geom, damping));
}

double wrap_degrees(double angle_deg)
{
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0.0) {
    a += 360.0;
  }
  return a >= 360.0 ? 0.0 : a;
}

SurfaceElement active_element(const CapLayout& layout, double drive_angle_deg)
{
  const int n = layout.n_caps;
  const double period = layout.period_deg();
  const double rel = wrap_degrees(drive_angle_deg - layout.pole_angles_deg[0]);
  int cap = static_cast<int>(std::floor(rel / period));
  double u = rel - cap * period;
  if (u < 0.0) {
    u = 0.0;
  }
  cap = std::clamp(cap, 0, n - 1);
  const int next = (cap + 1) % n;

  if (std::abs(u - 0.5 * period) <= layout.edge_window_deg) {
    return SurfaceElement::edge(cap, next);
  }
  if (u < layout.roller_window_deg) {
    return SurfaceElement::roller(cap);
  }
  if (u > period - layout.roller_window_deg) {
    return SurfaceElement::roller(next);
  }
  return SurfaceElement::cap(u < 0.5 * period ? cap : next);
}

double chord_sag(double r, double w)
{
  if (w <= 0.0) {
    return 0.0;
  }
  if (w >= 2.0 * r) {
    return r;
  }
  const double half = 0.5 * w;
  return r - std::sqrt(r * r - half * half);
}

double edge_gap_width(const WheelGeometry& geom, const CapLayout& layout, const SlideUnit& a,
                      const SlideUnit& b)
{
  // A cap displaced along its pole axis moves its rim tangentially away from
  // the boundary by |offset| * sin(half period).
  const double tangential = std::sin(0.5 * layout.period_deg() * kDegToRad);
  return geom.gap + (std::abs(a.offset) + std::abs(b.offset)) * tangential;
}

ContactPoint contact_state(const WheelGeometry& geom, const CapLayout& layout,
                           double drive_angle_deg, std::span<const SlideUnit> slides)
{
  if (static_cast<int>(slides.size()) != layout.n_caps) {
    throw InvalidInput("contact_state: expected " + std::to_string(layout.n_caps) +
                       " slide units, got " + std::to_string(slides.size()));
  }
  ContactPoint cp;
  cp.element = active_element(layout, drive_angle_deg);
  cp.drive_angle_deg = drive_angle_deg;

  const int owner = cp.element.first;
  const double phi = angle_between_deg(drive_angle_deg, layout.pole_angles_deg[owner]) * kDegToRad;
  const Eigen::Vector3d pole(std::sin(phi), 0.0, -std::cos(phi));
  const Eigen::Vector3d roller_axis(std::cos(phi), 0.0, std::sin(phi));

  switch (cp.element.kind) {
    case ElementKind::CapSurface:
      cp.axial_free_dir = pole;
      break;
    case ElementKind::BarrelRoller:
      cp.axial_free_dir = roller_axis;
      break;
    case ElementKind::EdgeGap: {
      cp.axial_free_dir = pole;
      const double w =
          edge_gap_width(geom, layout, slides[cp.element.first], slides[cp.element.second]);
      cp.height_deviation = -chord_sag(geom.r_w, w);
      break;
    }
  }
  return cp;
}

SlideUnit slide_step(SlideUnit unit, double axial_drive, double dt)
{
  if (!(dt > 0.0)) {
    throw InvalidInput("slide_step: dt must be positive");
  }
  if (unit.loaded) {
    unit.offset = std::clamp(unit.offset + axial_drive * dt, -unit.s_max, unit.s_max);
    return unit;
  }
  const double travel = unit.restore_rate * dt;
  if (std::abs(unit.offset) <= travel) {
    unit.offset = 0.0;
  } else {
    unit.offset -= std::copysign(travel, unit.offset);
  }
  return unit;
}

std::vector<ProfileSample> contact_height_profile(const WheelGeometry& geom,
                                                  const CapLayout& layout, int n_samples,
                                                  std::span<const SlideUnit> slides)
{
  if (n_samples < 3 * layout.n_caps) {
    throw InvalidInput("contact_height_profile: need at least 3 samples per cap");
  }
  std::vector<ProfileSample> out;
  out.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double angle = 360.0 * k / n_samples;
    out.push_back({angle, contact_state(geom, layout, angle, slides).height_deviation});
  }
  return out;
}

}  // namespace ptob
