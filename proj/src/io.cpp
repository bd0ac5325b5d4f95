#include "ptob/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ptob {

namespace {

json number_or_null(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

double number_or(const json& j, double fallback)
{
  return j.is_null() ? fallback : j.get<double>();
}

const json& require(const json& j, const char* key)
{
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing JSON field: ") + key);
  }
  return j.at(key);
}

template <typename T>
void get_optional(const json& j, const char* key, T& out)
{
  if (j.contains(key)) {
    j.at(key).get_to(out);
  }
}

std::vector<std::string> split_csv_line(const std::string& line)
{
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cells.push_back(cell);
  }
  return cells;
}

double parse_number(const std::string& s)
{
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && (*first == ' ' || *first == '\t')) {
    ++first;
  }
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) {
    --last;
  }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

void to_json(json& j, const WheelGeometry& g)
{
  j = json{{"r_w", g.r_w},   {"h_s", g.h_s},     {"d_s", g.d_s},
           {"d_a", g.d_a},   {"gap", g.gap},     {"s_max", g.s_max},
           {"k_spring_force", g.k_spring_force}, {"n_caps", g.n_caps}};
}

void from_json(const json& j, WheelGeometry& g)
{
  try {
    require(j, "r_w").get_to(g.r_w);
    require(j, "h_s").get_to(g.h_s);
    require(j, "d_s").get_to(g.d_s);
    require(j, "d_a").get_to(g.d_a);
    require(j, "gap").get_to(g.gap);
    require(j, "s_max").get_to(g.s_max);
    require(j, "k_spring_force").get_to(g.k_spring_force);
    g.n_caps = 3;
    get_optional(j, "n_caps", g.n_caps);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("wheel geometry JSON: ") + e.what());
  }
}

void to_json(json& j, const CapLayout& l)
{
  j = json{{"n_caps", l.n_caps},
           {"pole_angles_deg", l.pole_angles_deg},
           {"beta_deg", l.beta_deg},
           {"roller_window_deg", l.roller_window_deg},
           {"edge_window_deg", l.edge_window_deg}};
}

void from_json(const json& j, CapLayout& l)
{
  require(j, "n_caps").get_to(l.n_caps);
  require(j, "pole_angles_deg").get_to(l.pole_angles_deg);
  require(j, "beta_deg").get_to(l.beta_deg);
  require(j, "roller_window_deg").get_to(l.roller_window_deg);
  require(j, "edge_window_deg").get_to(l.edge_window_deg);
}

void to_json(json& j, const ConstraintCheck& c)
{
  j = json{{"id", c.id},
           {"bound", c.bound},
           {"actual", c.actual},
           {"slack", c.slack()},
           {"satisfied", c.satisfied}};
}

void from_json(const json& j, ConstraintCheck& c)
{
  require(j, "id").get_to(c.id);
  require(j, "bound").get_to(c.bound);
  require(j, "actual").get_to(c.actual);
  require(j, "satisfied").get_to(c.satisfied);
}

void to_json(json& j, const ConstraintReport& r)
{
  j = json{{"checks", r.checks}, {"ok", r.ok()}};
}

void from_json(const json& j, ConstraintReport& r)
{
  require(j, "checks").get_to(r.checks);
}

void to_json(json& j, const ChassisConfig& c)
{
  j = json{{"n_wheels", c.n_wheels},
           {"mount_radius", c.mount_radius},
           {"wheel_yaws", c.wheel_yaws},
           {"geom", c.geom},
           {"plate_clearance", c.plate_clearance}};
}

void from_json(const json& j, ChassisConfig& c)
{
  c = ChassisConfig{};
  get_optional(j, "n_wheels", c.n_wheels);
  get_optional(j, "mount_radius", c.mount_radius);
  get_optional(j, "wheel_yaws", c.wheel_yaws);
  get_optional(j, "geom", c.geom);
  get_optional(j, "plate_clearance", c.plate_clearance);
  c.validate();
}

void to_json(json& j, const Twist& t)
{
  j = json{{"vx", t.vx}, {"vy", t.vy}, {"omega", t.omega}};
}

void from_json(const json& j, Twist& t)
{
  require(j, "vx").get_to(t.vx);
  require(j, "vy").get_to(t.vy);
  require(j, "omega").get_to(t.omega);
}

void to_json(json& j, const Pose& p)
{
  j = json{{"x", p.x}, {"y", p.y}, {"heading", p.heading}};
}

void from_json(const json& j, Pose& p)
{
  require(j, "x").get_to(p.x);
  require(j, "y").get_to(p.y);
  require(j, "heading").get_to(p.heading);
}

void to_json(json& j, const StepScenario& s)
{
  j = json{{"height", s.height},
           {"approach_yaw", s.approach_yaw},
           {"s_max", s.s_max},
           {"phase_diff", s.phase_diff},
           {"hook_margin", s.hook_margin},
           {"plate_clearance", s.plate_clearance}};
}

void from_json(const json& j, StepScenario& s)
{
  s = StepScenario{};
  get_optional(j, "height", s.height);
  get_optional(j, "approach_yaw", s.approach_yaw);
  get_optional(j, "s_max", s.s_max);
  get_optional(j, "phase_diff", s.phase_diff);
  get_optional(j, "hook_margin", s.hook_margin);
  get_optional(j, "plate_clearance", s.plate_clearance);
}

void to_json(json& j, const HookOutcome& h)
{
  j = json{{"feasible", h.feasible},
           {"required_slide", number_or_null(h.required_slide)},
           {"hook_distance", number_or_null(h.hook_distance)},
           {"limiting_factor", to_string(h.limiting_factor)}};
}

void from_json(const json& j, HookOutcome& h)
{
  require(j, "feasible").get_to(h.feasible);
  h.required_slide = number_or(require(j, "required_slide"), kNoSlide);
  h.hook_distance =
      number_or(require(j, "hook_distance"), -std::numeric_limits<double>::infinity());
  h.limiting_factor = limiting_factor_from_string(require(j, "limiting_factor").get<std::string>());
}

void to_json(json& j, const RunScenario& s)
{
  j = json{{"motion", to_string(s.motion)},
           {"wheel_rate", s.wheel_rate},
           {"duration", s.duration},
           {"sample_rate", s.sample_rate},
           {"chassis", s.chassis},
           {"slide_drift_coeff", s.slide_drift_coeff},
           {"slide_damping", s.slide_damping},
           {"roller_window_deg", s.roller_window_deg},
           {"edge_window_deg", s.edge_window_deg},
           {"initial_drive_angles", s.initial_drive_angles}};
}

void from_json(const json& j, RunScenario& s)
{
  s = RunScenario{};
  if (j.contains("motion")) {
    s.motion = motion_from_string(j.at("motion").get<std::string>());
  }
  get_optional(j, "wheel_rate", s.wheel_rate);
  get_optional(j, "duration", s.duration);
  get_optional(j, "sample_rate", s.sample_rate);
  get_optional(j, "chassis", s.chassis);
  get_optional(j, "slide_drift_coeff", s.slide_drift_coeff);
  get_optional(j, "slide_damping", s.slide_damping);
  get_optional(j, "roller_window_deg", s.roller_window_deg);
  get_optional(j, "edge_window_deg", s.edge_window_deg);
  get_optional(j, "initial_drive_angles", s.initial_drive_angles);
}

json wheel_speeds_to_json(const WheelSpeeds& w)
{
  return json(std::vector<double>(w.data(), w.data() + w.size()));
}

WheelSpeeds wheel_speeds_from_json(const json& j)
{
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const WheelSpeeds>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json load_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string format_number(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    return "nan";
  }
  return std::string(buf, ptr);
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& profile)
{
  os << "angle_deg,height_dev_mm\n";
  for (const auto& s : profile) {
    os << format_number(s.angle_deg) << ',' << format_number(s.height_dev) << '\n';
  }
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& ts)
{
  const auto names = ts.channel_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    os << (c ? "," : "") << names[c];
  }
  os << '\n';
  for (std::size_t k = 0; k < ts.size(); ++k) {
    os << format_number(ts.t[k]);
    for (const auto& h : ts.height) {
      os << ',' << format_number(h[k]);
    }
    for (const auto& s : ts.slide) {
      os << ',' << format_number(s[k]);
    }
    os << ',' << format_number(ts.proxy[k]) << '\n';
  }
}

TimeSeries read_timeseries_csv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line)) {
    throw InvalidInput("time series CSV: empty input");
  }
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header.front() != "t_s" || header.back() != "proxy" ||
      (header.size() - 2) % 2 != 0) {
    throw InvalidInput("time series CSV: unexpected header");
  }
  const std::size_t n_wheels = (header.size() - 2) / 2;
  TimeSeries ts;
  ts.height.resize(n_wheels);
  ts.slide.resize(n_wheels);
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw InvalidInput("time series CSV: wrong column count on line " + std::to_string(row));
    }
    ts.t.push_back(parse_number(cells[0]));
    for (std::size_t i = 0; i < n_wheels; ++i) {
      ts.height[i].push_back(parse_number(cells[1 + i]));
      ts.slide[i].push_back(parse_number(cells[1 + n_wheels + i]));
    }
    ts.proxy.push_back(parse_number(cells.back()));
  }
  return ts;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& sp)
{
  os << "freq_hz,mag\n";
  for (std::size_t k = 0; k < sp.freq.size(); ++k) {
    os << format_number(sp.freq[k]) << ',' << format_number(sp.magnitude[k]) << '\n';
  }
}

void write_step_table_csv(std::ostream& os, const std::vector<StepTableRow>& rows)
{
  os << "s_max_mm,phase_deg,max_step_mm\n";
  for (const auto& r : rows) {
    os << format_number(r.s_max) << ',' << format_number(r.phase_deg) << ','
       << format_number(r.max_step) << '\n';
  }
}

}  // namespace ptob
