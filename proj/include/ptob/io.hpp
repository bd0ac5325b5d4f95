#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptob/chassis.hpp"
#include "ptob/geometry.hpp"
#include "ptob/simulate.hpp"
#include "ptob/stepclimb.hpp"
#include "ptob/wheel.hpp"

namespace ptob {

using json = nlohmann::json;

// JSON mappings. Non-finite numbers are written as null and read back as
// +infinity (required_slide) or -infinity (hook_distance).
void to_json(json& j, const WheelGeometry& g);
void from_json(const json& j, WheelGeometry& g);
void to_json(json& j, const CapLayout& l);
void from_json(const json& j, CapLayout& l);
void to_json(json& j, const ConstraintCheck& c);
void from_json(const json& j, ConstraintCheck& c);
void to_json(json& j, const ConstraintReport& r);
void from_json(const json& j, ConstraintReport& r);
void to_json(json& j, const ChassisConfig& c);
void from_json(const json& j, ChassisConfig& c);
void to_json(json& j, const Twist& t);
void from_json(const json& j, Twist& t);
void to_json(json& j, const Pose& p);
void from_json(const json& j, Pose& p);
void to_json(json& j, const StepScenario& s);
void from_json(const json& j, StepScenario& s);
void to_json(json& j, const HookOutcome& h);
void from_json(const json& j, HookOutcome& h);
void to_json(json& j, const RunScenario& s);
void from_json(const json& j, RunScenario& s);

json wheel_speeds_to_json(const WheelSpeeds& w);
WheelSpeeds wheel_speeds_from_json(const json& j);

json load_json_file(const std::string& path);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& profile);
void write_timeseries_csv(std::ostream& os, const TimeSeries& ts);
TimeSeries read_timeseries_csv(std::istream& is);
void write_spectrum_csv(std::ostream& os, const Spectrum& sp);
void write_step_table_csv(std::ostream& os, const std::vector<StepTableRow>& rows);

}  // namespace ptob
