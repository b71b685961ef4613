#include "cotlab/json_io.hpp"

#include <fstream>

#include "cotlab/errors.hpp"

namespace cotlab::json_io {

namespace {

Path path_from_labels(const PathSpace& space, const json& labels, const char* what) {
  if (!labels.is_array() || labels.size() != static_cast<size_t>(space.horizon()))
    throw ParseError(std::string(what) + ": path must list one label per step");
  Path p;
  for (int n = 0; n < space.horizon(); ++n)
    p.push_back(space.steps[n]->index_of(labels[n].get<std::string>()));
  return p;
}

json path_to_labels(const PathSpace& space, const Path& p) {
  json labels = json::array();
  for (size_t n = 0; n < p.size(); ++n) labels.push_back(space.steps[n]->atom(p[n]).label);
  return labels;
}

}  // namespace

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  throw ParseError("expected a rational ('p/q' string or number)");
}

json space_to_json(const FiniteSpace& space) {
  json atoms = json::array();
  for (const Atom& a : space.atoms()) atoms.push_back({{"label", a.label}, {"coord", a.coord}});
  return {{"dim", space.dim()}, {"atoms", atoms}};
}

SpacePtr space_from_json(const json& j) {
  if (!j.contains("atoms")) throw ParseError("space needs an 'atoms' array");
  std::vector<Atom> atoms;
  for (const json& a : j.at("atoms")) {
    Atom atom;
    atom.label = a.at("label").get<std::string>();
    for (const json& c : a.at("coord")) atom.coord.push_back(c.get<double>());
    atoms.push_back(std::move(atom));
  }
  const int dim = j.contains("dim") ? j.at("dim").get<int>()
                                    : static_cast<int>(atoms.front().coord.size());
  return make_space(std::move(atoms), dim);
}

json measure_doc(const DiscreteMeasure& mu) {
  json weights = json::array();
  for (const Rational& w : mu.weights()) weights.push_back(rational_to_json(w));
  return {{"space", space_to_json(*mu.space())}, {"measure", {{"weights", weights}}}};
}

DiscreteMeasure measure_from_doc(const json& j) {
  SpacePtr space = space_from_json(j.at("space"));
  std::vector<Rational> weights;
  for (const json& w : j.at("measure").at("weights")) weights.push_back(rational_from_json(w));
  return DiscreteMeasure(std::move(space), std::move(weights));
}

json coupling_doc(const Coupling& p) {
  json triplets = json::array();
  for (const Coupling::Entry& e : p.entries())
    triplets.push_back(json::array({e.row, e.col, rational_to_json(e.w)}));
  json doc{{"coupling", {{"triplets", triplets}}}};
  if (p.row_space().get() == p.col_space().get()) {
    doc["space"] = space_to_json(*p.row_space());
  } else {
    doc["row_space"] = space_to_json(*p.row_space());
    doc["col_space"] = space_to_json(*p.col_space());
  }
  return doc;
}

Coupling coupling_from_doc(const json& j) {
  SpacePtr row, col;
  if (j.contains("space")) {
    row = col = space_from_json(j.at("space"));
  } else {
    row = space_from_json(j.at("row_space"));
    col = space_from_json(j.at("col_space"));
  }
  std::vector<Coupling::Entry> entries;
  for (const json& t : j.at("coupling").at("triplets")) {
    if (!t.is_array() || t.size() != 3) throw ParseError("triplet must be [i, j, w]");
    entries.push_back({t[0].get<int>(), t[1].get<int>(), rational_from_json(t[2])});
  }
  return Coupling(std::move(row), std::move(col), std::move(entries));
}

json path_space_to_json(const PathSpace& ps) {
  json steps = json::array();
  for (const SpacePtr& s : ps.steps) steps.push_back(space_to_json(*s));
  return steps;
}

PathSpace path_space_from_json(const json& j) {
  PathSpace ps;
  for (const json& s : j) ps.steps.push_back(space_from_json(s));
  if (ps.steps.empty()) throw ParseError("path space needs at least one step");
  return ps;
}

json joint_law_doc(const JointPathLaw& law) {
  json support = json::array();
  for (const auto& e : law.support())
    support.push_back({{"y", path_to_labels(law.y_space(), e.y)},
                       {"x", path_to_labels(law.x_space(), e.x)},
                       {"w", rational_to_json(e.w)}});
  return {{"N", law.horizon()},
          {"y_alphabets", path_space_to_json(law.y_space())},
          {"x_alphabets", path_space_to_json(law.x_space())},
          {"support", support}};
}

JointPathLaw joint_law_from_doc(const json& j) {
  PathSpace y_space = path_space_from_json(j.at("y_alphabets"));
  PathSpace x_space = path_space_from_json(j.at("x_alphabets"));
  if (j.contains("N") && j.at("N").get<int>() != y_space.horizon())
    throw ParseError("N does not match the alphabet count");
  std::vector<JointPathLaw::Entry> support;
  for (const json& e : j.at("support"))
    support.push_back({path_from_labels(y_space, e.at("y"), "support"),
                       path_from_labels(x_space, e.at("x"), "support"),
                       rational_from_json(e.at("w"))});
  return JointPathLaw(std::move(y_space), std::move(x_space), std::move(support));
}

json path_dist_doc(const PathDist& mu) {
  json atoms = json::array();
  for (const auto& [y, w] : mu.atoms)
    atoms.push_back({{"y", path_to_labels(mu.space, y)}, {"w", rational_to_json(w)}});
  return {{"y_alphabets", path_space_to_json(mu.space)}, {"atoms", atoms}};
}

PathDist path_dist_from_doc(const json& j) {
  PathSpace space = path_space_from_json(j.at("y_alphabets"));
  std::vector<std::pair<Path, Rational>> atoms;
  for (const json& a : j.at("atoms"))
    atoms.push_back(
        {path_from_labels(space, a.at("y"), "atoms"), rational_from_json(a.at("w"))});
  return make_path_dist(std::move(space), std::move(atoms));
}

json stopping_doc(const RandomizedStoppingTime& tau, const PathDist& mu) {
  json doc{{"y_alphabets", path_space_to_json(tau.y_space)}};
  json mu_atoms = json::array();
  for (const auto& [y, w] : mu.atoms)
    mu_atoms.push_back({{"y", path_to_labels(mu.space, y)}, {"w", rational_to_json(w)}});
  doc["mu"] = mu_atoms;
  json kernel = json::array();
  for (const auto& [y, row] : tau.kernel) {
    json times = json::array();
    for (const Rational& w : row) times.push_back(rational_to_json(w));
    kernel.push_back({{"y", path_to_labels(tau.y_space, y)}, {"times", times}});
  }
  doc["kernel"] = kernel;
  return doc;
}

std::pair<RandomizedStoppingTime, PathDist> stopping_from_doc(const json& j) {
  PathSpace space = path_space_from_json(j.at("y_alphabets"));
  std::vector<std::pair<Path, Rational>> atoms;
  for (const json& a : j.at("mu"))
    atoms.push_back(
        {path_from_labels(space, a.at("y"), "mu"), rational_from_json(a.at("w"))});
  PathDist mu = make_path_dist(space, std::move(atoms));

  RandomizedStoppingTime tau;
  tau.y_space = space;
  for (const json& row : j.at("kernel")) {
    Path y = path_from_labels(space, row.at("y"), "kernel");
    std::vector<Rational> times;
    for (const json& w : row.at("times")) times.push_back(rational_from_json(w));
    tau.kernel[std::move(y)] = std::move(times);
  }
  tau.validate();
  return {std::move(tau), std::move(mu)};
}

json control_model_doc(const ControlModel& model) {
  json table = json::array();
  for (const auto& [y, w] : model.noise.atoms)
    for (const Path& x : model.action_space.all_paths())
      table.push_back({{"y", path_to_labels(model.noise.space, y)},
                       {"x", path_to_labels(model.action_space, x)},
                       {"c", rational_to_json(model.cost(y, x))}});
  const char* kind = "linear";
  switch (model.kind) {
    case ControlModel::Kind::linear: kind = "linear"; break;
    case ControlModel::Kind::expected_cost_squared: kind = "expected_cost_squared"; break;
    case ControlModel::Kind::variance_penalized: kind = "variance_penalized"; break;
    case ControlModel::Kind::target_tracking: kind = "target_tracking"; break;
  }
  return {{"noise", path_dist_doc(model.noise)},
          {"action_alphabets", path_space_to_json(model.action_space)},
          {"objective",
           {{"kind", kind}, {"param", rational_to_json(model.param)}, {"table", table}}}};
}

ControlModel control_model_from_doc(const json& j) {
  ControlModel model{path_dist_from_doc(j.at("noise")),
                     path_space_from_json(j.at("action_alphabets")),
                     {},
                     ControlModel::Kind::linear,
                     Rational(0)};
  const json& objective = j.at("objective");
  const std::string kind = objective.value("kind", "linear");
  if (kind == "linear") {
    model.kind = ControlModel::Kind::linear;
  } else if (kind == "expected_cost_squared") {
    model.kind = ControlModel::Kind::expected_cost_squared;
  } else if (kind == "variance_penalized") {
    model.kind = ControlModel::Kind::variance_penalized;
  } else if (kind == "target_tracking") {
    model.kind = ControlModel::Kind::target_tracking;
  } else {
    throw ParseError("unknown objective kind: " + kind);
  }
  if (objective.contains("param")) model.param = rational_from_json(objective.at("param"));

  auto table = std::make_shared<std::map<std::pair<Path, Path>, Rational>>();
  for (const json& row : objective.at("table"))
    (*table)[{path_from_labels(model.noise.space, row.at("y"), "objective"),
              path_from_labels(model.action_space, row.at("x"), "objective")}] =
        rational_from_json(row.at("c"));
  model.cost = [table](const Path& y, const Path& x) {
    auto it = table->find({y, x});
    if (it == table->end()) throw ParseError("objective table is missing an entry");
    return it->second;
  };
  return model;
}

json check_result_to_json(const CheckResult& r, const PathSpace& y_space) {
  json doc{{"ok", r.ok}, {"max_violation", rational_to_json(r.max_violation)}};
  if (!r.ok) {
    json witness{{"n", r.witness.n}, {"detail", r.witness.detail}};
    if (!r.witness.y_path.empty()) witness["y"] = path_to_labels(y_space, r.witness.y_path);
    doc["witness"] = witness;
  }
  return doc;
}

json mixture_doc(const MixtureDecomposition& d, const PathSpace& y_space) {
  json components = json::array();
  for (size_t i = 0; i < d.components.size(); ++i) {
    const MixtureComponent& comp = d.components[i];
    json steps = json::array();
    for (size_t n = 0; n < comp.map.steps.size(); ++n) {
      json entries = json::array();
      for (const auto& [prefix, atom] : comp.map.steps[n]) {
        json prefix_labels = json::array();
        for (size_t k = 0; k < prefix.size(); ++k)
          prefix_labels.push_back(y_space.steps[k]->atom(prefix[k]).label);
        entries.push_back({{"prefix", prefix_labels},
                           {"x", comp.map.x_space.steps[n]->atom(atom).label}});
      }
      steps.push_back(entries);
    }
    components.push_back({{"weight", rational_to_json(comp.weight)},
                          {"u_interval",
                           json::array({rational_to_json(d.u_intervals[i].first),
                                        rational_to_json(d.u_intervals[i].second)})},
                          {"map", steps}});
  }
  return {{"components", components}};
}

json rotation_report_to_json(const RotationReport& report) {
  return {{"n", report.n},
          {"grid", report.grid},
          {"diag_identity", rational_to_json(report.diag_identity)},
          {"diag_exact_rotation", rational_to_json(report.diag_exact)},
          {"diag_snapped", rational_to_json(report.diag_snapped)},
          {"fixed_atom_mass", rational_to_json(report.fixed_atom_mass)},
          {"w1_gap", report.w1_gap}};
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return doc;
}

void save_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace cotlab::json_io
