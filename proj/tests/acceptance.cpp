// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ptob/chassis.hpp"
#include "ptob/geometry.hpp"
#include "ptob/simulate.hpp"
#include "ptob/stepclimb.hpp"
#include "ptob/wheel.hpp"

using namespace ptob;

namespace {

struct Check
{
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what)
  {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Check&)>& body)
{
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= budget_s) {
    c.ok = false;
    c.note << " [over time budget " << budget_s << " s]";
  }
  failures += !c.ok;
  std::printf("%s  %d. %s (%.2f s)%s\n", c.ok ? "PASS" : "FAIL", id, title, secs,
              c.note.str().c_str());
  std::fflush(stdout);
}

Twist random_twist(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> v(-1500.0, 1500.0);
  std::uniform_real_distribution<double> w(-6.0, 6.0);
  return {v(rng), v(rng), w(rng)};
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

double parseval_ratio(const Spectrum& sp)
{
  double sum = 0.0;
  for (double m : sp.magnitude) {
    sum += m * m;
  }
  return sp.windowed_energy > 0.0 ? sum / sp.windowed_energy : 1.0;
}

}  // namespace

int main()
{
  const ChassisConfig chassis;
  const WheelGeometry proto = prototype_geometry();

  criterion(1, "inverse kinematics equals the four closed-form rows", 1.0, [&](Check& c) {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Twist t = random_twist(rng);
      worst = std::max(worst, rel_err(inverse_kinematics(t, chassis),
                                      oracle::eq6_rows(t, chassis.mount_radius)));
    }
    c.require(worst <= 1e-12, "random twists within 1e-12 relative");
    const double k = 1.0 / std::sqrt(2.0);
    auto near5 = [](const WheelSpeeds& w, Eigen::Vector4d e) {
      return (w - e).cwiseAbs().maxCoeff() < 5e-6;
    };
    c.require(near5(inverse_kinematics(Twist{1, 0, 0}, chassis),
                    {0.70711, -0.70711, -0.70711, 0.70711}),
              "(1,0,0) example");
    c.require(near5(inverse_kinematics(Twist{0, 0, 1}, chassis),
                    Eigen::Vector4d::Constant(282.84271)),
              "(0,0,1) example");
    c.require(near5(inverse_kinematics(Twist{k, k, 0}, chassis), {1, 0, -1, 0}),
              "diagonal example");
    c.note << " worst rel err " << worst;
  });

  criterion(2, "forward/inverse round trip and quarter-turn wheel shift", 5.0, [&](Check& c) {
    std::mt19937_64 rng(202);
    double worst_res = 0.0;
    double worst_twist = 0.0;
    bool shift_exact = true;
    for (int i = 0; i < 10000; ++i) {
      const Twist t = random_twist(rng);
      const WheelSpeeds w = inverse_kinematics(t, chassis);
      const auto r = forward_kinematics(w, chassis);
      worst_res = std::max(worst_res, r.residual / w.cwiseAbs().maxCoeff());
      worst_twist = std::max({worst_twist, std::abs(r.twist.vx - t.vx) / 1500.0,
                              std::abs(r.twist.vy - t.vy) / 1500.0,
                              std::abs(r.twist.omega - t.omega) / 6.0});
      const WheelSpeeds rot = inverse_kinematics(Twist{-t.vy, t.vx, t.omega}, chassis);
      for (int k = 0; k < 4; ++k) {
        shift_exact &= rot((k + 1) % 4) == w(k);
      }
    }
    c.require(worst_res <= 1e-9, "residual <= 1e-9");
    c.require(worst_twist <= 1e-9, "twist recovered");
    c.require(shift_exact, "cyclic shift exact");
    c.note << " worst residual " << worst_res;
  });

  criterion(3, "cap, rim and actuator bounds on the 127 mm wheel; scale homogeneity", 5.0,
            [&](Check& c) {
              WheelGeometry g = proto;
              g.gap = 0.0;
              const auto rep = validate_wheel_geometry(g, true);
              const double r = g.r_w;
              auto bound = [&](const char* id) { return rep.find(id)->bound; };
              c.require(std::abs(bound(constraint_id::kCapThickness) - r / 2.0) <= 1e-9,
                        "h_s < 31.75");
              c.require(std::abs(bound(constraint_id::kRimDiameter) - std::sqrt(3.0) * r) <= 1e-9,
                        "d_s < 109.985");
              c.require(std::abs(bound(constraint_id::kActuatorFit) - 2.0 * (r - g.h_s)) <= 1e-9,
                        "d_a < 2(r_w - h_s)");
              c.require(std::abs(bound(constraint_id::kActuatorStepRule) - 2.0 * r / 3.0) <= 1e-9,
                        "d_a < 42.333");
              c.require(std::abs(bound(constraint_id::kRimDiameter) - 109.985) < 5e-4,
                        "published rim bound");
              c.require(rep.ok(), "prototype passes");

              std::mt19937_64 rng(303);
              std::uniform_real_distribution<double> scale(0.01, 100.0);
              std::uniform_real_distribution<double> frac(0.3, 1.2);
              for (int i = 0; i < 100; ++i) {
                WheelGeometry q{63.5, 31.75 * frac(rng), 110.0 * frac(rng), 42.3 * frac(rng),
                                1.0 * frac(rng), 30.0, 12.7, 3};
                const double a = scale(rng);
                const auto base = validate_wheel_geometry(q, true);
                const auto big = validate_wheel_geometry(q.scaled(a), true);
                bool same = base.ok() == big.ok();
                for (std::size_t k = 0; k < base.checks.size(); ++k) {
                  same &= base.checks[k].satisfied == big.checks[k].satisfied;
                  same &= std::abs(big.checks[k].bound - a * base.checks[k].bound) <=
                          1e-9 * std::max(1.0, a * base.checks[k].bound);
                }
                c.require(same, "scaled verdict " + std::to_string(i));
              }
            });

  criterion(4, "slide needed to hook a 0.7 r_w step at 45 deg, vs sampled oracle", 30.0,
            [&](Check& c) {
              const double h = 0.7 * proto.r_w;
              const double s = min_slide_for_hook(proto, h, 45.0, kDefaultHookMargin);
              oracle::HookSampler o{proto, h, 45.0};
              const double ref = o.min_slide(kDefaultHookMargin);
              c.require(s >= 0.25 * h && s <= 0.55 * h, "within [0.25, 0.55] h");
              c.require(std::abs(s - ref) <= 0.1, "oracle within 0.1 mm");
              c.note << " slide " << s << " mm = " << s / h << " h, oracle " << ref;
            });

  criterion(5, "step table: calibration cell, other cells within one grid step, orderings", 60.0,
            [&](Check& c) {
              const double paper[3][2] = {{35, 30}, {35, 30}, {45, 40}};
              const auto iv = calibration_interval(proto, 30.0, 45.0, 50.0, 5.0);
              c.require(iv.contains(kDefaultHookMargin), "frozen margin inside calibration cell");
              const auto rows = step_table(proto, 50.0, 5.0);
              c.note << " margin " << kDefaultHookMargin << " in (" << iv.lower << ", " << iv.upper
                     << "]; cells";
              for (std::size_t i = 0; i < rows.size(); ++i) {
                const double want = paper[i / 2][i % 2];
                c.note << " " << rows[i].s_max << "/" << rows[i].phase_deg << "=" << rows[i].max_step;
                c.require(std::abs(rows[i].max_step - want) <= 5.0, "cell " + std::to_string(i));
              }
              c.require(rows[4].max_step == 45.0, "calibration cell exact");
              for (int i = 0; i < 3; ++i) {
                c.require(rows[2 * i + 1].max_step <= rows[2 * i].max_step, "phase ordering");
                if (i < 2) {
                  c.require(rows[2 * i].max_step <= rows[2 * i + 2].max_step, "slide ordering 0");
                  c.require(rows[2 * i + 1].max_step <= rows[2 * i + 3].max_step,
                            "slide ordering 60");
                }
              }
              for (double h = 50.0; h < 2.0 * proto.r_w; h += 2.5) {
                StepScenario sc;
                sc.height = h;
                const auto out = hook_feasible(proto, sc);
                c.require(!out.feasible && out.limiting_factor == LimitingFactor::PlateContact,
                          "plate contact at h=" + std::to_string(h));
              }
            });

  criterion(6, "gap crossing 100/115 feasible, 127 falls through", 10.0, [&](Check& c) {
    StepScenario sc;
    const double drop = gap_drop(proto.r_w, 100.0);
    const auto g100 = gap_crossing_feasible(proto, 100.0, sc);
    const auto g115 = gap_crossing_feasible(proto, 115.0, sc);
    const auto g127 = gap_crossing_feasible(proto, 127.0, sc);
    c.require(std::abs(drop - 24.36) <= 0.01, "drop(100) = 24.36");
    c.require(g100.feasible && g115.feasible, "100 and 115 feasible");
    c.require(g115.hook_distance - kDefaultHookMargin < g100.hook_distance - kDefaultHookMargin,
              "margin shrinks");
    c.require(!g127.feasible, "127 infeasible");
    c.note << " drop " << drop << ", margins " << g100.hook_distance - kDefaultHookMargin << " / "
           << g115.hook_distance - kDefaultHookMargin;
  });

  criterion(7, "spectral proxy: Parseval, cap-pass peak, forward vs diagonal, turning slides",
            30.0, [&](Check& c) {
              RunScenario s;
              s.motion = Motion::Forward;
              const auto fwd = run_flat_ground(s);
              s.motion = Motion::Diagonal;
              const auto dia = run_flat_ground(s);
              s.motion = Motion::Turning;
              const auto turn = run_flat_ground(s);

              const auto sf = spectrum(fwd.t, fwd.proxy);
              const auto sd = spectrum(dia.t, dia.proxy);
              double worst = 0.0;
              for (const auto* ts : {&fwd, &dia, &turn}) {
                for (const auto& name : ts->channel_names()) {
                  if (name == "t_s") {
                    continue;
                  }
                  for (auto w : {Window::Hann, Window::Rect}) {
                    worst = std::max(worst,
                                     std::abs(parseval_ratio(spectrum(ts->t, ts->channel(name), w)) - 1.0));
                  }
                }
              }
              c.require(worst <= 1e-6, "Parseval");

              const double cap_pass = 3.0 * 0.96;
              const auto peaks = dominant_peaks(sf, 1, 1.0, 50.0);
              c.require(!peaks.empty() && std::abs(peaks[0].freq - cap_pass) <= sf.resolution() &&
                            std::abs(peaks[0].bin_freq - cap_pass) <= sf.resolution(),
                        "forward peak at 2.88 Hz");
              const double ef = band_energy(sf, 5.0 * cap_pass);
              const double ed = band_energy(sd, 5.0 * cap_pass);
              c.require(ef > ed, "forward high band > diagonal");

              double worst_mean = 0.0;
              for (const auto& sl : turn.slide) {
                double sum = 0.0;
                for (double v : sl) {
                  sum += std::abs(v);
                }
                worst_mean = std::max(worst_mean, sum / sl.size());
              }
              c.require(worst_mean < 0.1 * proto.s_max, "turning mean |slide| < 0.1 s_max");
              c.note << " peak " << (peaks.empty() ? 0.0 : peaks[0].freq) << " Hz (bin "
                     << sf.resolution() << "), high-band " << ef << " vs " << ed
                     << ", turning mean |slide| " << worst_mean << " mm, Parseval err " << worst;
            });

  criterion(8, "slide clamping/return, element partition, closed-square odometry", 10.0,
            [&](Check& c) {
              std::mt19937_64 rng(808);
              std::uniform_real_distribution<double> force(-400.0, 400.0);
              std::uniform_real_distribution<double> dt(1e-4, 0.2);
              std::bernoulli_distribution loaded(0.6);
              SlideUnit u = make_slide_unit(proto);
              bool bounded = true;
              bool returns = true;
              for (int i = 0; i < 10000; ++i) {
                u.loaded = loaded(rng);
                const double before = std::abs(u.offset);
                u = slide_step(u, force(rng), dt(rng));
                bounded &= std::abs(u.offset) <= u.s_max;
                returns &= u.loaded || std::abs(u.offset) <= before;
              }
              u.loaded = false;
              int steps = 0;
              while (u.offset != 0.0 && steps < 100000) {
                u = slide_step(u, 0.0, 0.01);
                ++steps;
              }
              returns &= u.offset == 0.0 && slide_step(u, 50.0, 1.0).offset == 0.0;
              c.require(bounded, "|offset| <= s_max");
              c.require(returns, "return to centre");

              const auto layout = make_layout(proto);
              std::uniform_real_distribution<double> angle(0.0, 360.0);
              bool partition = true;
              for (int i = 0; i < 10000; ++i) {
                const double a = angle(rng);
                const double m = std::fmod(a, 120.0);
                const auto e = active_element(layout, a);
                const bool edge = std::abs(m - 60.0) <= layout.edge_window_deg;
                const bool roller =
                    !edge && (m < layout.roller_window_deg || m > 120.0 - layout.roller_window_deg);
                partition &= (e.kind == ElementKind::EdgeGap) == edge;
                partition &= (e.kind == ElementKind::BarrelRoller) == roller;
                const auto e2 = active_element(layout, a + 120.0);
                partition &= e2.kind == e.kind && e2.first == (e.first + 1) % 3;
              }
              c.require(partition, "partition and periodicity");

              const double q = std::numbers::pi / 2.0;
              double worst = 0.0;
              for (double step = 0.1; step > 0.1 / 64.0; step /= 2.0) {
                Pose p{};
                for (int leg = 0; leg < 4; ++leg) {
                  const Twist along{200.0, 0.0, 0.0};
                  const Twist turn{0.0, 0.0, q};
                  const auto w = inverse_kinematics(along, chassis);
                  const auto back = forward_kinematics(w, chassis).twist;
                  for (int k = 0; k < std::lround(2.0 / step); ++k) {
                    p = integrate_odometry(p, back, step);
                  }
                  for (int k = 0; k < std::lround(1.0 / step); ++k) {
                    p = integrate_odometry(p, turn, step);
                  }
                }
                worst = std::max(worst, std::hypot(p.x, p.y));
              }
              c.require(worst <= 1e-6, "square closes within 1e-6 mm");
              c.note << " square closure " << worst << " mm";
            });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
