// cotlab: experiment runner for couplings of finitely supported measures.
// Subcommands load JSON instances, dispatch into the core library, and emit
// JSON verdicts or CSV tables. Exit codes: 0 success, 1 domain error (JSON
// error object on stdout), 2 usage error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cotlab/adapted_approx.hpp"
#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/json_io.hpp"
#include "cotlab/monge.hpp"
#include "cotlab/rotation.hpp"
#include "cotlab/stable.hpp"
#include "cotlab/stopping.hpp"
#include "cotlab/suite.hpp"
#include "cotlab/transport.hpp"

namespace {

using cotlab::json_io::json;

struct Options {
  std::string instance;
  std::string out;
  std::string mode = "exact";
  std::string objective = "min";
  std::string levels = "all";
  std::vector<int> refine;
  uint64_t seed = 0;
  bool all_checkers = false;
  bool decompose = false;
  bool approximate = false;
  int rotation_n = 8;
  int rotation_grid = 32;
};

double mode_tolerance(const Options& opt) { return opt.mode == "float" ? 1e-9 : 0.0; }

cotlab::LpMode lp_mode(const Options& opt) {
  return opt.mode == "float" ? cotlab::LpMode::floating : cotlab::LpMode::exact;
}

void emit(const Options& opt, const json& doc) {
  if (opt.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    cotlab::json_io::save_file(opt.out, doc);
}

void write_csv_rows(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw cotlab::ValidationError("cannot write " + path);
    out = &file;
  }
  for (size_t c = 0; c < header.size(); ++c) *out << (c ? "," : "") << header[c];
  *out << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) *out << (c ? "," : "") << row[c];
    *out << "\n";
  }
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

int cmd_check_compat(const Options& opt) {
  cotlab::JointPathLaw law =
      cotlab::json_io::joint_law_from_doc(cotlab::json_io::load_file(opt.instance));
  const double tol = mode_tolerance(opt);
  json doc;
  cotlab::CheckResult ci = cotlab::check_ci(law, tol);
  if (opt.all_checkers) {
    json checkers;
    checkers["ci"] = cotlab::json_io::check_result_to_json(ci, law.y_space());
    cotlab::CheckResult mgale = cotlab::check_mgale(law, tol);
    cotlab::CheckResult proj = cotlab::check_proj(law, tol);
    cotlab::CheckResult reverse = cotlab::check_reverse(law, tol);
    checkers["mgale"] = cotlab::json_io::check_result_to_json(mgale, law.y_space());
    checkers["proj"] = cotlab::json_io::check_result_to_json(proj, law.y_space());
    checkers["reverse"] = cotlab::json_io::check_result_to_json(reverse, law.y_space());
    doc["checkers"] = checkers;
    doc["agree"] =
        ci.ok == mgale.ok && ci.ok == proj.ok && ci.ok == reverse.ok;
    doc["ok"] = ci.ok;
  } else {
    doc = cotlab::json_io::check_result_to_json(ci, law.y_space());
  }
  emit(opt, doc);
  return 0;
}

int cmd_monge_approx(const Options& opt) {
  cotlab::Coupling p =
      cotlab::json_io::coupling_from_doc(cotlab::json_io::load_file(opt.instance));
  cotlab::PartitionSequence parts = cotlab::dyadic_partitions(p.row_space());
  auto family = cotlab::default_family(p.row_space(), p.col_space(), 2);

  std::vector<int> levels;
  if (opt.levels == "all") {
    for (int k = 0; k < parts.num_levels(); ++k) levels.push_back(k);
  } else {
    for (size_t pos = 0; pos < opt.levels.size();) {
      size_t comma = opt.levels.find(',', pos);
      if (comma == std::string::npos) comma = opt.levels.size();
      levels.push_back(std::stoi(opt.levels.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }

  std::vector<std::vector<std::string>> rows;
  for (int level : levels) {
    std::optional<cotlab::MongeApproximation> approx;
    try {
      approx = cotlab::monge_approximate(p, parts, level);
    } catch (const cotlab::GranularityError&) {
      if (opt.levels != "all") throw;
      break;  // deeper levels of the sweep are unavailable
    }
    const cotlab::Rational gap = cotlab::stable_gap(approx->coupling, p, family);
    const cotlab::Rational bound =
        cotlab::stable_gap_bound(cotlab::marginal(p, cotlab::Axis::row), parts.cells(level));
    const double w1 = cotlab::wasserstein1(
        cotlab::DiscreteMeasure(
            cotlab::product_space(*p.row_space(), *p.col_space()),
            [&] {
              std::vector<cotlab::Rational> w(
                  p.row_space()->size() * p.col_space()->size(), cotlab::Rational(0));
              for (const auto& e : approx->coupling.entries())
                w[e.row * p.col_space()->size() + e.col] += e.w;
              return w;
            }()),
        cotlab::DiscreteMeasure(
            cotlab::product_space(*p.row_space(), *p.col_space()), [&] {
              std::vector<cotlab::Rational> w(
                  p.row_space()->size() * p.col_space()->size(), cotlab::Rational(0));
              for (const auto& e : p.entries()) w[e.row * p.col_space()->size() + e.col] += e.w;
              return w;
            }()));
    rows.push_back({std::to_string(level), gap.str(), bound.str(), format_double(w1)});
  }
  write_csv_rows(opt.out, {"level", "stable_gap", "gap_bound", "w1_gap"}, rows);
  return 0;
}

int cmd_adapted_approx(const Options& opt) {
  std::vector<std::vector<std::string>> rows;
  if (!opt.refine.empty()) {
    auto table = cotlab::convergence_report(cotlab::independent_product_instance, opt.refine);
    for (const auto& row : table)
      rows.push_back({std::to_string(row.m), row.stable_gap.str(),
                      format_double(row.w1_gap), row.osc_bound.str()});
  } else {
    cotlab::JointPathLaw law =
        cotlab::json_io::joint_law_from_doc(cotlab::json_io::load_file(opt.instance));
    cotlab::AdaptedResult res =
        cotlab::approximate_adapted(law, cotlab::Schedule::automatic(law.horizon()));
    rows.push_back({"-", res.stable_gap.str(), format_double(res.w1_gap),
                    res.max_osc_bound.str()});
  }
  write_csv_rows(opt.out, {"m", "stable_gap", "w1_gap", "osc_bound"}, rows);
  return 0;
}

int cmd_decompose(const Options& opt) {
  cotlab::JointPathLaw law =
      cotlab::json_io::joint_law_from_doc(cotlab::json_io::load_file(opt.instance));
  cotlab::MixtureDecomposition d = cotlab::decompose_compatible(law);
  emit(opt, cotlab::json_io::mixture_doc(d, law.y_space()));
  return 0;
}

int cmd_stopping(const Options& opt) {
  if (!opt.refine.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (int m : opt.refine) {
      auto [tau, mu] = cotlab::instances::uniform_stop_family(m);
      cotlab::StoppingApprox res = cotlab::approximate_stopping(tau, mu);
      rows.push_back({std::to_string(m), format_double(res.w1_gap)});
    }
    write_csv_rows(opt.out, {"m", "w1_gap"}, rows);
    return 0;
  }
  auto [tau, mu] = cotlab::json_io::stopping_from_doc(cotlab::json_io::load_file(opt.instance));
  if (opt.decompose) {
    auto components = cotlab::decompose_stopping(tau, mu);
    json out = json::array();
    for (const auto& [w, st] : components) {
      json rules = json::array();
      for (const auto& [y, t] : st.rule) {
        json labels = json::array();
        for (size_t n = 0; n < y.size(); ++n)
          labels.push_back(tau.y_space.steps[n]->atom(y[n]).label);
        rules.push_back({{"y", labels},
                         {"t", t == cotlab::kTimeInfinity ? json("inf") : json(t)}});
      }
      out.push_back({{"weight", w.str()}, {"rule", rules}});
    }
    emit(opt, {{"components", out}});
    return 0;
  }
  if (opt.approximate) {
    cotlab::StoppingApprox res = cotlab::approximate_stopping(tau, mu);
    json rules = json::array();
    for (const auto& [y, t] : res.st.rule) {
      json labels = json::array();
      for (size_t n = 0; n < y.size(); ++n)
        labels.push_back(tau.y_space.steps[n]->atom(y[n]).label);
      rules.push_back(
          {{"y", labels}, {"t", t == cotlab::kTimeInfinity ? json("inf") : json(t)}});
    }
    emit(opt, {{"stopping_time", rules}, {"w1_gap", res.w1_gap}});
    return 0;
  }
  // Default: report the membership check.
  cotlab::RstCheck check = cotlab::is_randomized_st(tau, mu, mode_tolerance(opt));
  emit(opt, {{"ok", check.ok}, {"max_violation", check.max_violation.str()}});
  return 0;
}

int cmd_causal_ot(const Options& opt) {
  const json instance = cotlab::json_io::load_file(opt.instance);
  cotlab::ControlModel model = cotlab::json_io::control_model_from_doc(instance);
  const cotlab::Sense sense =
      opt.objective == "max" ? cotlab::Sense::maximize : cotlab::Sense::minimize;

  if (instance.contains("x_marginal")) {
    // Both marginals fixed: report the LP value and the adapted brute-force
    // value side by side; their relation carries no claim.
    json atoms = json::array();
    for (const json& a : instance.at("x_marginal"))
      atoms.push_back({{"y", a.contains("x") ? a.at("x") : a.at("y")}, {"w", a.at("w")}});
    json marg{{"y_alphabets", instance.at("action_alphabets")}, {"atoms", atoms}};
    cotlab::PathDist nu = cotlab::json_io::path_dist_from_doc(marg);
    cotlab::TwoMarginalResult res =
        cotlab::causal_two_marginal(model.noise, nu, model.cost, sense, lp_mode(opt));
    json doc{{"value", res.lp_value.str()},
             {"law", cotlab::json_io::joint_law_doc(res.lp_law)},
             {"adapted_feasible", res.adapted_feasible}};
    if (res.adapted_feasible) doc["adapted_value"] = res.adapted_value.str();
    emit(opt, doc);
    return 0;
  }

  cotlab::CausalValueResult res =
      cotlab::causal_value(model.noise, model.action_space, model.cost, sense, lp_mode(opt));
  json doc{{"value", res.value.str()},
           {"law", cotlab::json_io::joint_law_doc(res.law)},
           {"unconstrained",
            cotlab::unconstrained_value(model.noise, model.action_space, model.cost, sense)
                .str()}};
  emit(opt, doc);
  return 0;
}

int cmd_control(const Options& opt) {
  cotlab::ControlModel model =
      cotlab::json_io::control_model_from_doc(cotlab::json_io::load_file(opt.instance));
  cotlab::ControlValues values = cotlab::control_values(model);
  emit(opt, {{"relaxed", values.relaxed.str()},
             {"pure", values.pure.str()},
             {"gap", values.gap.str()}});
  return 0;
}

int cmd_demo_rotation(const Options& opt) {
  cotlab::RotationReport report = cotlab::rotation_demo(opt.rotation_n, opt.rotation_grid);
  emit(opt, cotlab::json_io::rotation_report_to_json(report));
  return 0;
}

int cmd_suite(const Options& opt) {
  namespace fs = std::filesystem;
  if (!opt.out.empty()) fs::create_directories(opt.out);
  bool all_pass = true;
  json summary = json::array();
  for (const auto& result : cotlab::suite::run_all(opt.seed)) {
    all_pass = all_pass && result.pass;
    std::cout << "criterion " << result.id << " [" << result.name << "]: "
              << (result.pass ? "PASS" : "FAIL") << " (" << format_double(result.seconds)
              << "s)";
    if (!result.pass) std::cout << " - " << result.detail;
    std::cout << "\n";
    // Timings go to stdout only; files stay byte-identical across runs.
    summary.push_back({{"id", result.id},
                       {"name", result.name},
                       {"pass", result.pass},
                       {"detail", result.detail}});
    if (!opt.out.empty()) {
      const std::string path = opt.out + "/criterion_" + std::to_string(result.id) + "_" +
                               result.name + ".csv";
      cotlab::suite::write_csv(path, result);
    }
  }
  if (!opt.out.empty())
    cotlab::json_io::save_file(opt.out + "/summary.json", {{"criteria", summary}});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for couplings, compatibility, and causal transport"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_instance) {
    if (needs_instance)
      cmd->add_option("--instance", opt.instance, "instance JSON file");
    cmd->add_option("--out", opt.out, "output path");
    cmd->add_option("--mode", opt.mode, "arithmetic mode")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--seed", opt.seed, "RNG seed");
    return cmd;
  };

  CLI::App* check = add_common(app.add_subcommand("check-compat", "membership checkers"), true);
  check->add_flag("--all-checkers", opt.all_checkers, "run all four characterizations");

  CLI::App* monge = add_common(app.add_subcommand("monge-approx", "partition-refinement maps"), true);
  monge->add_option("--levels", opt.levels, "'all' or a comma list of levels");

  CLI::App* adapted =
      add_common(app.add_subcommand("adapted-approx", "adapted approximation engine"), true);
  adapted->add_option("--refine", opt.refine, "refinement family sizes")->delimiter(',');

  add_common(app.add_subcommand("decompose", "mixture decomposition"), true);

  CLI::App* stopping = add_common(app.add_subcommand("stopping", "randomized stopping times"), true);
  stopping->add_flag("--decompose", opt.decompose, "decompose into pure stopping times");
  stopping->add_flag("--approximate", opt.approximate, "approximate by a pure stopping time");
  stopping->add_option("--refine", opt.refine, "refinement family sizes")->delimiter(',');

  CLI::App* causal = add_common(app.add_subcommand("causal-ot", "causal transport LP"), true);
  causal->add_option("--objective", opt.objective, "min or max")
      ->check(CLI::IsMember({"min", "max"}));

  add_common(app.add_subcommand("control", "relaxed vs pure control values"), true);

  CLI::App* rotation = add_common(app.add_subcommand("demo-rotation", "Gaussian rotation demo"), false);
  rotation->add_option("--n", opt.rotation_n, "rotation is by 1/n radians");
  rotation->add_option("--grid", opt.rotation_grid, "grid resolution per axis");

  add_common(app.add_subcommand("suite", "run the acceptance suite"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("check-compat")) return cmd_check_compat(opt);
    if (app.got_subcommand("monge-approx")) return cmd_monge_approx(opt);
    if (app.got_subcommand("adapted-approx")) return cmd_adapted_approx(opt);
    if (app.got_subcommand("decompose")) return cmd_decompose(opt);
    if (app.got_subcommand("stopping")) return cmd_stopping(opt);
    if (app.got_subcommand("causal-ot")) return cmd_causal_ot(opt);
    if (app.got_subcommand("control")) return cmd_control(opt);
    if (app.got_subcommand("demo-rotation")) return cmd_demo_rotation(opt);
    if (app.got_subcommand("suite")) return cmd_suite(opt);
  } catch (const cotlab::Error& e) {
    json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
