#pragma once

#include <json.hpp>

#include "cotlab/compatibility.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/measure.hpp"
#include "cotlab/rotation.hpp"
#include "cotlab/stopping.hpp"
#include "cotlab/transport.hpp"

namespace cotlab::json_io {

using nlohmann::json;

// Rationals serialize as "p/q" strings; plain JSON numbers are accepted on
// input and embedded exactly.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json space_to_json(const FiniteSpace& space);
SpacePtr space_from_json(const json& j);

/// {"space": ..., "measure": {"weights": [...]}}
json measure_doc(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_doc(const json& j);

/// {"row_space": ..., "col_space": ..., "coupling": {"triplets": [[i,j,"w"]]}}
/// A single "space" key may replace both when they coincide.
json coupling_doc(const Coupling& p);
Coupling coupling_from_doc(const json& j);

json path_space_to_json(const PathSpace& ps);
PathSpace path_space_from_json(const json& j);

/// {"N": 2, "y_alphabets": [...], "x_alphabets": [...],
///  "support": [{"y": ["0","1"], "x": ["1","0"], "w": "1/4"}]}
json joint_law_doc(const JointPathLaw& law);
JointPathLaw joint_law_from_doc(const json& j);

/// {"y_alphabets": [...], "atoms": [{"y": [...], "w": "..."}]}
json path_dist_doc(const PathDist& mu);
PathDist path_dist_from_doc(const json& j);

/// {"y_alphabets": [...], "mu": [...],
///  "kernel": [{"y": [...], "times": ["1/2","1/2","0"]}]}  (last slot = inf)
json stopping_doc(const RandomizedStoppingTime& tau, const PathDist& mu);
std::pair<RandomizedStoppingTime, PathDist> stopping_from_doc(const json& j);

/// {"noise": path-dist doc, "action_alphabets": [...],
///  "objective": {"kind": "linear", "param": "0",
///                "table": [{"y": [...], "x": [...], "c": "..."}]}}
json control_model_doc(const ControlModel& model);
ControlModel control_model_from_doc(const json& j);

json check_result_to_json(const CheckResult& r, const PathSpace& y_space);
json mixture_doc(const MixtureDecomposition& d, const PathSpace& y_space);
json rotation_report_to_json(const RotationReport& report);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& doc);

}  // namespace cotlab::json_io
