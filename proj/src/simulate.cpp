#include "ptob/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace ptob {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::size_t next_pow2(std::size_t n)
{
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

}  // namespace

double RunScenario::max_frequency_of_interest() const
{
  const double band = std::max(1e-6, 2.0 * edge_window_deg);
  return wheel_rate * 360.0 / band;
}

void RunScenario::validate() const
{
  if (!std::isfinite(duration) || !(duration > 0.0)) {
    throw InvalidInput("run scenario: duration must be positive");
  }
  if (!std::isfinite(sample_rate) || !(sample_rate > 0.0)) {
    throw InvalidInput("run scenario: sample_rate must be positive");
  }
  if (!std::isfinite(wheel_rate) || wheel_rate < 0.0) {
    throw InvalidInput("run scenario: wheel_rate must be >= 0");
  }
  if (!std::isfinite(slide_drift_coeff) || slide_drift_coeff < 0.0) {
    throw InvalidInput("run scenario: slide_drift_coeff must be >= 0");
  }
  chassis.validate();
  if (!initial_drive_angles.empty() &&
      static_cast<int>(initial_drive_angles.size()) != chassis.n_wheels) {
    throw InvalidInput("run scenario: one initial drive angle per wheel");
  }
  if (sample_rate < 2.0 * max_frequency_of_interest()) {
    throw InvalidInput("run scenario: sample_rate below twice the edge-pass frequency");
  }
}

std::span<const double> TimeSeries::channel(const std::string& name) const
{
  if (name == "proxy") {
    return proxy;
  }
  if (name == "t_s" || name == "t") {
    return t;
  }
  if (name.size() >= 4 && name[0] == 'w' && name[name.size() - 2] == '_') {
    const int wheel = std::atoi(name.substr(1, name.size() - 3).c_str()) - 1;
    if (wheel >= 0 && wheel < static_cast<int>(n_wheels())) {
      if (name.back() == 'h') {
        return height[wheel];
      }
      if (name.back() == 's') {
        return slide[wheel];
      }
    }
  }
  throw InvalidInput("unknown time-series channel: " + name);
}

std::vector<std::string> TimeSeries::channel_names() const
{
  std::vector<std::string> names{"t_s"};
  for (std::size_t i = 0; i < n_wheels(); ++i) {
    names.push_back("w" + std::to_string(i + 1) + "_h");
  }
  for (std::size_t i = 0; i < n_wheels(); ++i) {
    names.push_back("w" + std::to_string(i + 1) + "_s");
  }
  names.push_back("proxy");
  return names;
}

Twist run_twist(const RunScenario& s)
{
  const double surface = 2.0 * std::numbers::pi * s.chassis.geom.r_w * s.wheel_rate;
  switch (s.motion) {
    case Motion::Forward:
      return {std::numbers::sqrt2 * surface, 0.0, 0.0};
    case Motion::Diagonal:
      return {surface / std::numbers::sqrt2, surface / std::numbers::sqrt2, 0.0};
    case Motion::Turning:
      return {0.0, 0.0, surface / s.chassis.mount_radius};
  }
  return {};
}

TimeSeries run_flat_ground(const RunScenario& s)
{
  s.validate();
  const ChassisConfig& chassis = s.chassis;
  const WheelGeometry& geom = chassis.geom;
  const CapLayout layout = make_layout(geom, s.roller_window_deg, s.edge_window_deg);
  const int n_wheels = chassis.n_wheels;
  const int n_caps = layout.n_caps;

  const Twist twist = run_twist(s);
  const WheelSpeeds speeds = inverse_kinematics(twist, chassis);

  const auto n_samples = static_cast<std::size_t>(std::floor(s.duration * s.sample_rate));
  const double dt = 1.0 / s.sample_rate;

  TimeSeries ts;
  ts.t.resize(n_samples);
  ts.height.assign(n_wheels, std::vector<double>(n_samples));
  ts.slide.assign(n_wheels, std::vector<double>(n_samples));
  ts.proxy.assign(n_samples, 0.0);

  std::vector<std::vector<SlideUnit>> slides(n_wheels,
                                             centered_slides(geom, s.slide_damping));
  std::vector<double> theta0(n_wheels, 0.0);
  if (!s.initial_drive_angles.empty()) {
    theta0 = s.initial_drive_angles;
  }
  // Drive angle rate in deg/s for each wheel.
  std::vector<double> rate(n_wheels);
  for (int i = 0; i < n_wheels; ++i) {
    rate[i] = speeds(i) / (2.0 * std::numbers::pi * geom.r_w) * 360.0;
  }

  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) * dt;
    ts.t[k] = t;
    double sum = 0.0;
    for (int i = 0; i < n_wheels; ++i) {
      const double theta = theta0[i] + rate[i] * t;
      const ContactPoint cp = contact_state(geom, layout, theta, slides[i]);
      ts.height[i][k] = cp.height_deviation;
      ts.slide[i][k] = slides[i][cp.element.first].offset;
      sum += cp.height_deviation;

      // Caps carrying the contact are loaded; the rest spring back.
      for (int j = 0; j < n_caps; ++j) {
        SlideUnit& unit = slides[i][j];
        unit.loaded = j == cp.element.first || j == cp.element.second;
        const double phi = std::remainder(layout.pole_angles_deg[j] - theta, 360.0) * kDegToRad;
        // Ground-speed component along the pole axis: sin(phi) times the
        // contact speed along the rolling direction.
        const double axial = s.slide_drift_coeff * std::sin(phi) * speeds(i);
        unit = slide_step(unit, axial, dt);
      }
    }
    ts.proxy[k] = sum / n_wheels;
  }
  return ts;
}

Spectrum spectrum(std::span<const double> t, std::span<const double> x, Window window)
{
  const std::size_t n = x.size();
  if (t.size() != n) {
    throw InvalidInput("spectrum: time and value lengths differ");
  }
  if (n < 256) {
    throw InvalidInput("spectrum: need at least 256 samples");
  }
  const double dt = (t[n - 1] - t[0]) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) {
    throw InvalidInput("spectrum: time stamps must increase");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs((t[k] - t[k - 1]) - dt) > 1e-6 * dt) {
      throw InvalidInput("spectrum: non-uniform sampling");
    }
  }

  double mean = 0.0;
  for (double v : x) {
    mean += v;
  }
  mean /= static_cast<double>(n);

  const std::size_t nfft = next_pow2(n);
  std::vector<double> buf(nfft, 0.0);
  double energy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    if (window == Window::Hann) {
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                static_cast<double>(n - 1)));
    }
    buf[k] = w * (x[k] - mean);
    energy += buf[k] * buf[k];
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> bins;
  fft.fwd(bins, buf);

  Spectrum sp;
  sp.window = window;
  sp.windowed_energy = energy;
  const std::size_t half = nfft / 2;
  sp.freq.resize(half + 1);
  sp.magnitude.resize(half + 1);
  const double fs = 1.0 / dt;
  for (std::size_t k = 0; k <= half; ++k) {
    const double fold = (k == 0 || k == half) ? 1.0 : 2.0;
    sp.freq[k] = static_cast<double>(k) * fs / static_cast<double>(nfft);
    sp.magnitude[k] = std::abs(bins[k]) * std::sqrt(fold / static_cast<double>(nfft));
  }
  return sp;
}

std::vector<Peak> dominant_peaks(const Spectrum& sp, int k, double f_lo, double f_hi)
{
  if (k < 1) {
    throw InvalidInput("dominant_peaks: k must be >= 1");
  }
  std::vector<Peak> peaks;
  const auto& m = sp.magnitude;
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    if (sp.freq[i] < f_lo || sp.freq[i] > f_hi) {
      continue;
    }
    if (!(m[i] > m[i - 1] && m[i] >= m[i + 1] && m[i] > 0.0)) {
      continue;
    }
    Peak p{sp.freq[i], m[i], sp.freq[i]};
    if (m[i - 1] > 0.0 && m[i + 1] > 0.0) {
      const double a = std::log(m[i - 1]);
      const double b = std::log(m[i]);
      const double c = std::log(m[i + 1]);
      const double curve = a - 2.0 * b + c;
      if (curve < 0.0) {
        const double delta = 0.5 * (a - c) / curve;
        p.freq += delta * sp.resolution();
        p.magnitude = std::exp(b - 0.25 * (a - c) * delta);
      }
    }
    peaks.push_back(p);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  if (static_cast<int>(peaks.size()) > k) {
    peaks.resize(k);
  }
  return peaks;
}

double band_energy(const Spectrum& sp, double f_lo)
{
  double e = 0.0;
  for (std::size_t i = 0; i < sp.freq.size(); ++i) {
    if (sp.freq[i] >= f_lo) {
      e += sp.magnitude[i] * sp.magnitude[i];
    }
  }
  return e;
}

const char* to_string(Motion m)
{
  switch (m) {
    case Motion::Forward:
      return "forward";
    case Motion::Diagonal:
      return "diagonal";
    case Motion::Turning:
      return "turning";
  }
  return "forward";
}

Motion motion_from_string(const std::string& s)
{
  for (auto m : {Motion::Forward, Motion::Diagonal, Motion::Turning}) {
    if (s == to_string(m)) {
      return m;
    }
  }
  throw InvalidInput("unknown motion: " + s);
}

const char* to_string(Window w)
{
  return w == Window::Hann ? "hann" : "rect";
}

Window window_from_string(const std::string& s)
{
  if (s == "hann") {
    return Window::Hann;
  }
  if (s == "rect") {
    return Window::Rect;
  }
  throw InvalidInput("unknown window: " + s);
}

}  // namespace ptob
