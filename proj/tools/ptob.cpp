// ptob: command-line front end for the wheel/chassis toolkit.
//
// Lengths are mm, angles deg, time s. Exit status: 0 success, 1 input
// error, 2 when design-check finds a violated constraint.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptob/chassis.hpp"
#include "ptob/geometry.hpp"
#include "ptob/io.hpp"
#include "ptob/simulate.hpp"
#include "ptob/stepclimb.hpp"
#include "ptob/wheel.hpp"

namespace {

using ptob::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

// Defaults from $PTOB_CONFIG, overridden by per-command files and flags.
struct Config
{
  ptob::WheelGeometry geom = ptob::prototype_geometry();
  ptob::ChassisConfig chassis;
  json step = json::object();
  json run = json::object();
};

Config load_config()
{
  Config cfg;
  const char* path = std::getenv("PTOB_CONFIG");
  if (path == nullptr || *path == '\0') {
    return cfg;
  }
  const json j = ptob::load_json_file(path);
  if (j.contains("geom")) {
    cfg.geom = j.at("geom").get<ptob::WheelGeometry>();
  }
  cfg.chassis.geom = cfg.geom;
  if (j.contains("chassis")) {
    cfg.chassis = j.at("chassis").get<ptob::ChassisConfig>();
    if (!j.at("chassis").contains("geom")) {
      cfg.chassis.geom = cfg.geom;
    }
  }
  if (j.contains("step")) {
    cfg.step = j.at("step");
  }
  if (j.contains("run")) {
    cfg.run = j.at("run");
  }
  return cfg;
}

std::vector<std::string> normalize_args(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  // "kinematics ik" and "stepclimb table" spell the same verbs as
  // "kinematics-ik" and "stepclimb-table".
  if (args.size() >= 2 && (args[0] == "kinematics" || args[0] == "stepclimb") &&
      !args[1].empty() && args[1][0] != '-') {
    args[0] += "-" + args[1];
    args.erase(args.begin() + 1);
  }
  return args;
}

std::string dump(const json& j)
{
  return j.dump(2) + "\n";
}

struct StepFlags
{
  std::optional<double> height;
  std::optional<double> yaw;
  std::optional<double> s_max;
  std::optional<double> phase;
  std::optional<double> hook_margin;
  std::optional<double> plate_clearance;
  std::string scenario_path;

  void attach(CLI::App* cmd)
  {
    cmd->add_option("--scenario", scenario_path, "StepScenario JSON file");
    cmd->add_option("--yaw", yaw, "approach yaw relative to the step edge [deg]");
    cmd->add_option("--s-max", s_max, "available slide half-range [mm]");
    cmd->add_option("--phase", phase, "phase difference between paired wheels: 0 or 60 [deg]");
    cmd->add_option("--hook-margin", hook_margin, "required landing distance past the corner [mm]");
    cmd->add_option("--plate-clearance", plate_clearance, "support plate clearance [mm]");
  }

  ptob::StepScenario resolve(const Config& cfg, const ptob::WheelGeometry& geom) const
  {
    json j = cfg.step;
    if (!j.contains("s_max")) {
      j["s_max"] = geom.s_max;
    }
    if (!j.contains("plate_clearance")) {
      j["plate_clearance"] = cfg.chassis.plate_clearance;
    }
    if (!scenario_path.empty()) {
      j.update(ptob::load_json_file(scenario_path));
    }
    auto sc = j.get<ptob::StepScenario>();
    if (height) sc.height = *height;
    if (yaw) sc.approach_yaw = *yaw;
    if (s_max) sc.s_max = *s_max;
    if (phase) sc.phase_diff = *phase;
    if (hook_margin) sc.hook_margin = *hook_margin;
    if (plate_clearance) sc.plate_clearance = *plate_clearance;
    sc.validate();
    return sc;
  }
};

ptob::WheelGeometry resolve_geom(const Config& cfg, const std::string& path)
{
  ptob::WheelGeometry g = path.empty() ? cfg.geom : ptob::load_json_file(path).get<ptob::WheelGeometry>();
  ptob::check_geometry_input(g);
  return g;
}

ptob::ChassisConfig resolve_chassis(const Config& cfg, const std::string& path)
{
  ptob::ChassisConfig c = path.empty() ? cfg.chassis : ptob::load_json_file(path).get<ptob::ChassisConfig>();
  c.validate();
  return c;
}

json peaks_to_json(const std::vector<ptob::Peak>& peaks)
{
  json arr = json::array();
  for (const auto& p : peaks) {
    arr.push_back({{"freq_hz", p.freq}, {"mag", p.magnitude}, {"bin_freq_hz", p.bin_freq}});
  }
  return arr;
}

json timeseries_to_json(const ptob::TimeSeries& ts)
{
  json j = json::object();
  for (const auto& name : ts.channel_names()) {
    const auto ch = ts.channel(name);
    j[name] = std::vector<double>(ch.begin(), ch.end());
  }
  return j;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Spherical-cap omni wheel analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  std::string output;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", output, "output path (default stdout)");

  std::string geom_path;
  std::string chassis_path;

  // design-check
  bool strict = false;
  auto* design = app.add_subcommand("design-check", "validate wheel packing constraints");
  design->add_option("--geom", geom_path, "WheelGeometry JSON file");
  design->add_flag("--strict", strict, "also apply the step-climbing actuator rule");

  // cap-bounds
  std::optional<double> cb_rw;
  std::optional<double> cb_gap;
  std::optional<int> cb_n;
  auto* caps = app.add_subcommand("cap-bounds", "largest cap thickness and rim diameter");
  caps->add_option("--geom", geom_path, "WheelGeometry JSON file");
  caps->add_option("--r-w", cb_rw, "wheel radius [mm]");
  caps->add_option("--gap", cb_gap, "rim gap [mm]");
  caps->add_option("--n-caps", cb_n, "number of caps");

  // plate-spacing
  double clearance = 0.0;
  auto* plates = app.add_subcommand("plate-spacing", "minimum support plate spacing");
  plates->add_option("--geom", geom_path, "WheelGeometry JSON file");
  plates->add_option("--clearance", clearance, "extra clearance per side [mm]");

  // stepclimb-solve
  StepFlags solve_flags;
  auto* solve = app.add_subcommand("stepclimb-solve", "hooking feasibility for one step");
  solve->add_option("--geom", geom_path, "WheelGeometry JSON file");
  solve->add_option("--height", solve_flags.height, "step height [mm]");
  solve_flags.attach(solve);

  // stepclimb-table
  std::optional<double> table_clearance;
  double resolution = 5.0;
  double table_margin = ptob::kDefaultHookMargin;
  double table_yaw = ptob::kDefaultApproachYaw;
  auto* table = app.add_subcommand("stepclimb-table", "max step over slide range x phase");
  table->add_option("--geom", geom_path, "WheelGeometry JSON file");
  table->add_option("--plate-clearance", table_clearance, "support plate clearance [mm]");
  table->add_option("--resolution", resolution, "step height grid [mm]");
  table->add_option("--hook-margin", table_margin, "hook margin [mm]");
  table->add_option("--yaw", table_yaw, "approach yaw [deg]");

  // gap
  double gap_width = 0.0;
  StepFlags gap_flags;
  auto* gap = app.add_subcommand("gap", "gap crossing as an equivalent step");
  gap->add_option("--geom", geom_path, "WheelGeometry JSON file");
  gap->add_option("--gap", gap_width, "gap width [mm]")->required();
  gap_flags.attach(gap);

  // kinematics
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
  auto* ik = app.add_subcommand("kinematics-ik", "wheel speeds for a body twist");
  ik->add_option("--chassis", chassis_path, "ChassisConfig JSON file");
  ik->add_option("--vx", vx, "body x speed [mm/s]");
  ik->add_option("--vy", vy, "body y speed [mm/s]");
  ik->add_option("--omega", omega, "yaw rate [rad/s]");

  std::vector<double> speeds;
  auto* fk = app.add_subcommand("kinematics-fk", "least-squares twist for wheel speeds");
  fk->add_option("--chassis", chassis_path, "ChassisConfig JSON file");
  fk->add_option("--speeds", speeds, "comma-separated wheel speeds [mm/s]")
      ->required()
      ->delimiter(',');

  // odometry
  double dt = 1.0;
  int steps = 1;
  double x0 = 0.0;
  double y0 = 0.0;
  double heading0 = 0.0;
  auto* odo = app.add_subcommand("odometry", "integrate a constant body twist");
  odo->add_option("--vx", vx, "body x speed [mm/s]");
  odo->add_option("--vy", vy, "body y speed [mm/s]");
  odo->add_option("--omega", omega, "yaw rate [rad/s]");
  odo->add_option("--dt", dt, "step [s]");
  odo->add_option("--steps", steps, "number of steps")->check(CLI::PositiveNumber);
  odo->add_option("--x", x0, "initial x [mm]");
  odo->add_option("--y", y0, "initial y [mm]");
  odo->add_option("--heading", heading0, "initial heading [rad]");

  // simulate
  std::string run_path;
  std::optional<std::string> motion;
  std::optional<double> wheel_rate;
  std::optional<double> duration;
  std::optional<double> sample_rate;
  std::optional<double> drift;
  auto* sim = app.add_subcommand("simulate", "flat-ground contact-height run");
  sim->add_option("--scenario", run_path, "RunScenario JSON file");
  sim->add_option("--geom", geom_path, "WheelGeometry JSON file");
  sim->add_option("--chassis", chassis_path, "ChassisConfig JSON file");
  sim->add_option("--motion", motion, "forward | diagonal | turning");
  sim->add_option("--wheel-rate", wheel_rate, "wheel rotation rate [rev/s]");
  sim->add_option("--duration", duration, "run length [s]");
  sim->add_option("--sample-rate", sample_rate, "sampling rate [Hz]");
  sim->add_option("--drift-coeff", drift, "slide drift coefficient");

  // spectrum
  std::string input_path;
  std::string channel = "proxy";
  std::string window_name = "hann";
  std::optional<int> n_peaks;
  std::vector<double> band{0.0, 1e300};
  auto* spectrum_cmd = app.add_subcommand("spectrum", "magnitude spectrum of a time-series channel");
  spectrum_cmd->add_option("--input", input_path, "time-series CSV ('-' for stdin)")->required();
  spectrum_cmd->add_option("--channel", channel, "column name");
  spectrum_cmd->add_option("--window", window_name, "hann | rect");
  spectrum_cmd->add_option("--peaks", n_peaks, "emit the K dominant peaks instead of the spectrum");
  spectrum_cmd->add_option("--band", band, "peak band lo,hi [Hz]")->delimiter(',')->expected(2);

  // profile
  int n_samples = 360;
  std::vector<double> offsets;
  double roller_window = ptob::kDefaultRollerWindowDeg;
  double edge_window = ptob::kDefaultEdgeWindowDeg;
  auto* prof = app.add_subcommand("profile", "contact height over one revolution");
  prof->add_option("--geom", geom_path, "WheelGeometry JSON file");
  prof->add_option("--samples", n_samples, "samples per revolution");
  prof->add_option("--offsets", offsets, "slide offset per cap [mm]")->delimiter(',');
  prof->add_option("--roller-window", roller_window, "roller band half-width [deg]");
  prof->add_option("--edge-window", edge_window, "edge band half-width [deg]");

  const auto args = normalize_args(argc, argv);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  const Config cfg = load_config();
  auto fmt = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };
  std::ostringstream doc;
  int status = kExitOk;

  if (design->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto report = ptob::validate_wheel_geometry(g, strict);
    if (fmt("json") == "csv") {
      doc << "id,bound,actual,slack,satisfied\n";
      for (const auto& c : report.checks) {
        doc << c.id << ',' << ptob::format_number(c.bound) << ',' << ptob::format_number(c.actual)
            << ',' << ptob::format_number(c.slack()) << ',' << (c.satisfied ? "true" : "false")
            << '\n';
      }
    } else {
      doc << dump(report);
    }
    status = report.ok() ? kExitOk : kExitViolation;
  } else if (caps->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto b = ptob::max_cap_dimensions(cb_rw.value_or(g.r_w), cb_gap.value_or(g.gap),
                                            cb_n.value_or(g.n_caps));
    doc << dump({{"h_s_max", b.h_s_max}, {"d_s_max", b.d_s_max}});
  } else if (plates->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    doc << dump({{"d_p_min", ptob::support_plate_spacing(g, clearance)},
                 {"formula", ptob::kPlateSpacingFormula}});
  } else if (solve->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto sc = solve_flags.resolve(cfg, g);
    doc << dump({{"scenario", sc}, {"outcome", ptob::hook_feasible(g, sc)}});
  } else if (table->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto rows = ptob::step_table(g, table_clearance.value_or(cfg.chassis.plate_clearance),
                                       resolution, table_margin, table_yaw);
    if (fmt("csv") == "csv") {
      ptob::write_step_table_csv(doc, rows);
    } else {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"s_max_mm", r.s_max}, {"phase_deg", r.phase_deg}, {"max_step_mm", r.max_step}});
      }
      doc << dump(arr);
    }
  } else if (gap->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto sc = gap_flags.resolve(cfg, g);
    doc << dump({{"gap", gap_width},
                 {"drop", ptob::gap_drop(g.r_w, gap_width)},
                 {"outcome", ptob::gap_crossing_feasible(g, gap_width, sc)}});
  } else if (ik->parsed()) {
    const auto c = resolve_chassis(cfg, chassis_path);
    const ptob::Twist t{vx, vy, omega};
    doc << dump({{"twist", t}, {"speeds", ptob::wheel_speeds_to_json(ptob::inverse_kinematics(t, c))}});
  } else if (fk->parsed()) {
    const auto c = resolve_chassis(cfg, chassis_path);
    const ptob::WheelSpeeds w =
        Eigen::Map<const ptob::WheelSpeeds>(speeds.data(), static_cast<Eigen::Index>(speeds.size()));
    const auto r = ptob::forward_kinematics(w, c);
    doc << dump({{"twist", r.twist}, {"residual", r.residual}});
  } else if (odo->parsed()) {
    ptob::Pose p{x0, y0, ptob::normalize_heading(heading0)};
    const ptob::Twist t{vx, vy, omega};
    for (int k = 0; k < steps; ++k) {
      p = ptob::integrate_odometry(p, t, dt);
    }
    doc << dump(p);
  } else if (sim->parsed()) {
    json j = cfg.run;
    if (!run_path.empty()) {
      j.update(ptob::load_json_file(run_path));
    }
    auto s = j.get<ptob::RunScenario>();
    if (!j.contains("chassis")) {
      s.chassis = cfg.chassis;
    }
    if (!chassis_path.empty()) {
      s.chassis = resolve_chassis(cfg, chassis_path);
    }
    if (!geom_path.empty()) {
      s.chassis.geom = resolve_geom(cfg, geom_path);
    }
    if (motion) s.motion = ptob::motion_from_string(*motion);
    if (wheel_rate) s.wheel_rate = *wheel_rate;
    if (duration) s.duration = *duration;
    if (sample_rate) s.sample_rate = *sample_rate;
    if (drift) s.slide_drift_coeff = *drift;
    const auto ts = ptob::run_flat_ground(s);
    if (fmt("csv") == "csv") {
      ptob::write_timeseries_csv(doc, ts);
    } else {
      doc << dump({{"scenario", s}, {"series", timeseries_to_json(ts)}});
    }
  } else if (spectrum_cmd->parsed()) {
    ptob::TimeSeries ts;
    if (input_path == "-") {
      ts = ptob::read_timeseries_csv(std::cin);
    } else {
      std::ifstream in(input_path);
      if (!in) {
        throw ptob::InvalidInput("cannot open " + input_path);
      }
      ts = ptob::read_timeseries_csv(in);
    }
    const auto sp = ptob::spectrum(ts.t, ts.channel(channel), ptob::window_from_string(window_name));
    if (n_peaks) {
      const auto peaks = ptob::dominant_peaks(sp, *n_peaks, band[0], band[1]);
      if (fmt("json") == "csv") {
        doc << "freq_hz,mag\n";
        for (const auto& p : peaks) {
          doc << ptob::format_number(p.freq) << ',' << ptob::format_number(p.magnitude) << '\n';
        }
      } else {
        doc << dump({{"channel", channel},
                     {"window", ptob::to_string(sp.window)},
                     {"resolution_hz", sp.resolution()},
                     {"peaks", peaks_to_json(peaks)}});
      }
    } else if (fmt("csv") == "csv") {
      ptob::write_spectrum_csv(doc, sp);
    } else {
      doc << dump({{"channel", channel},
                   {"window", ptob::to_string(sp.window)},
                   {"windowed_energy", sp.windowed_energy},
                   {"freq_hz", sp.freq},
                   {"mag", sp.magnitude}});
    }
  } else if (prof->parsed()) {
    const auto g = resolve_geom(cfg, geom_path);
    const auto layout = ptob::make_layout(g, roller_window, edge_window);
    auto slides = ptob::centered_slides(g);
    if (!offsets.empty()) {
      if (offsets.size() != slides.size()) {
        throw ptob::InvalidInput("--offsets needs one value per cap");
      }
      for (std::size_t i = 0; i < slides.size(); ++i) {
        slides[i].offset = offsets[i];
      }
    }
    const auto p = ptob::contact_height_profile(g, layout, n_samples, slides);
    if (fmt("csv") == "csv") {
      ptob::write_profile_csv(doc, p);
    } else {
      json arr = json::array();
      for (const auto& s : p) {
        arr.push_back({{"angle_deg", s.angle_deg}, {"height_dev_mm", s.height_dev}});
      }
      doc << dump({{"layout", layout}, {"profile", arr}});
    }
  }

  if (output.empty()) {
    out << doc.str();
  } else {
    std::ofstream file(output);
    if (!file) {
      throw ptob::InvalidInput("cannot write " + output);
    }
    file << doc.str();
  }
  return status;
}

}  // namespace

int main(int argc, char** argv)
{
  try {
    return run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
