#pragma once

#include <span>
#include <string>
#include <vector>

#include "ptob/chassis.hpp"
#include "ptob/wheel.hpp"

namespace ptob {

enum class Motion { Forward, Diagonal, Turning };

/**
 * Flat-ground run. Every driven wheel turns at `wheel_rate`; the chassis
 * twist is chosen so that |v_i| equals the wheel's surface speed for the
 * wheels that move (Forward: all four, Diagonal: wheels 1 and 3, Turning:
 * all four via the rotation column).
 */
struct RunScenario
{
  Motion motion = Motion::Forward;
  double wheel_rate = 0.96;      ///< rev/s
  double duration = 10.0;        ///< s
  double sample_rate = 1000.0;   ///< Hz
  ChassisConfig chassis;
  double slide_drift_coeff = 0.05;
  double slide_damping = kDefaultSlideDamping;
  double roller_window_deg = kDefaultRollerWindowDeg;
  double edge_window_deg = kDefaultEdgeWindowDeg;
  std::vector<double> initial_drive_angles;  ///< deg per wheel; empty = all zero

  /// Highest frequency the contact model produces: edge-band passes.
  double max_frequency_of_interest() const;
  void validate() const;

  bool operator==(const RunScenario&) const = default;
};

struct TimeSeries
{
  std::vector<double> t;
  std::vector<std::vector<double>> height;  ///< [wheel][sample], mm
  std::vector<std::vector<double>> slide;   ///< [wheel][sample], contacting cap offset, mm
  std::vector<double> proxy;                ///< mean wheel height deviation

  std::size_t size() const { return t.size(); }
  std::size_t n_wheels() const { return height.size(); }

  /// Channel by CSV column name (w1_h, w3_s, proxy, ...).
  std::span<const double> channel(const std::string& name) const;
  std::vector<std::string> channel_names() const;
};

Twist run_twist(const RunScenario& s);
TimeSeries run_flat_ground(const RunScenario& s);

enum class Window { Rect, Hann };

struct Spectrum
{
  std::vector<double> freq;       ///< Hz, 0 .. fs/2
  std::vector<double> magnitude;  ///< one-sided, scaled so sum(mag^2) = windowed energy
  Window window = Window::Hann;
  double windowed_energy = 0.0;
  double resolution() const { return freq.size() > 1 ? freq[1] - freq[0] : 0.0; }
};

/// One-sided magnitude spectrum of the mean-removed, windowed channel,
/// zero-padded to the next power of two.
Spectrum spectrum(std::span<const double> t, std::span<const double> x,
                  Window window = Window::Hann);

struct Peak
{
  double freq;       ///< Hz, interpolated between bins
  double magnitude;  ///< interpolated peak height
  double bin_freq;   ///< Hz, centre of the local-maximum bin
};

/// The k largest local maxima with bin frequency in [f_lo, f_hi], largest
/// first. Frequency and height come from a parabola through the log
/// magnitudes of the maximum and its two neighbours, which removes most of
/// the window's scalloping loss.
std::vector<Peak> dominant_peaks(const Spectrum& sp, int k, double f_lo, double f_hi);

/// Sum of magnitude^2 over bins with freq >= f_lo.
double band_energy(const Spectrum& sp, double f_lo);

const char* to_string(Motion m);
Motion motion_from_string(const std::string& s);
const char* to_string(Window w);
Window window_from_string(const std::string& s);

}  // namespace ptob
