#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbeam/acceptance.hpp"
#include "cbeam/benchmarks.hpp"
#include "cbeam/errors.hpp"
#include "cbeam/model_io.hpp"
#include "cbeam/postprocess.hpp"

namespace cbeam::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json vec(const Vec3d& v) { return ordered_json::array({v[0], v[1], v[2]}); }

// BEAM_OUT wins over --out.
fs::path output_dir(const std::string& flag) {
  if (const char* env = std::getenv("BEAM_OUT"); env && *env) return env;
  return flag;
}

void prepare(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string csv_cell(double v) { return format_double(v); }

struct SolveOptions {
  std::string model;
  std::string out = "out";
  int samples = 101;
  long long seed = 0;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const ModelSpec spec = load_model(o.model);
  if (o.samples < 2) throw ValidationError("--samples must be at least 2");
  const SolvedModel sol = solve_model(spec.model, spec.discretization());

  const auto s = sample_points(sol, SampleLocation::Uniform, o.samples);
  const auto rows = centerline(sol, s);
  std::vector<Resultants> res;
  for (double si : s) res.push_back(resultants(sol, si));
  const Reactions r = reactions(sol);
  const FieldSample tip = evaluate(sol, sol.model.curve.length());

  ordered_json summary;
  summary["model"] = o.model;
  summary["formulation"] = std::string(to_string(spec.formulation));
  summary["quadrature"] = std::string(to_string(spec.policy));
  summary["elements"] = spec.elements;
  summary["dofs"] = sol.system.num_dofs();
  summary["length"] = sol.model.curve.length();
  summary["tip_displacement"] = vec(tip_displacement(sol));
  summary["tip_rotation"] = vec(tip.theta.cast<double>());
  summary["reactions"] = {{"start", {{"force", vec(r.start.force)}, {"moment", vec(r.start.moment)}}},
                          {"end", {{"force", vec(r.end.force)}, {"moment", vec(r.end.moment)}}}};
  summary["strain_energy"] = strain_energy(sol);
  summary["residual"] = sol.fields.residual;
  summary["condition_estimate"] = sol.fields.condition_estimate;
  summary["warnings"] = sol.system.warnings;

  const fs::path dir = output_dir(o.out);
  prepare(dir);
  write_centerline_csv(dir / "centerline.csv", rows);
  write_resultants_csv(dir / "resultants.csv", res);
  write_text(dir / "summary.json", summary.dump(2) + "\n");

  const Vec3d u = tip_displacement(sol);
  out << "solved " << o.model << ": " << sol.system.num_dofs() << " dofs, tip displacement (" << format_double(u[0])
      << ", " << format_double(u[1]) << ", " << format_double(u[2]) << ")\n";
  for (const auto& w : sol.system.warnings) out << "warning: " << w << "\n";
  out << "wrote " << (dir / "centerline.csv").string() << ", resultants.csv, summary.json\n";
  return kOk;
}

struct ConvergeOptions {
  std::string study;
  std::string out = "out";
};

int cmd_converge(const ConvergeOptions& o, std::ostream& out) {
  const StudyFile file = load_study(o.study);
  const ConvergenceReport rep = run_convergence(file.study);
  std::optional<LockingReport> locking;
  if (file.locking) locking = run_locking_study(file.study);

  std::ostringstream csv;
  csv << "benchmark,formulation,quadrature,t,n_elem,qoi,error,rel_error,order\n";
  for (const auto& g : rep.groups)
    for (const auto& r : g.rows) {
      csv << to_string(rep.benchmark) << ',' << to_string(g.formulation) << ',' << to_string(g.policy) << ','
          << csv_cell(g.t) << ',' << r.n_elem << ',';
      if (r.solved) csv << csv_cell(r.qoi) << ',' << csv_cell(r.error) << ',' << csv_cell(r.rel_error);
      else csv << ",,";
      csv << ',' << (g.order ? csv_cell(*g.order) : std::string()) << '\n';
    }

  ordered_json summary;
  summary["study"] = o.study;
  summary["benchmark"] = std::string(to_string(rep.benchmark));
  summary["groups"] = ordered_json::array();
  for (const auto& g : rep.groups) {
    ordered_json jg;
    jg["formulation"] = std::string(to_string(g.formulation));
    jg["quadrature"] = std::string(to_string(g.policy));
    jg["t"] = g.t;
    jg["reference"] = g.reference;
    jg["order"] = g.order ? ordered_json(*g.order) : ordered_json(nullptr);
    jg["pair_orders"] = ordered_json::array();
    for (double p : g.pair_orders) jg["pair_orders"].push_back(std::isfinite(p) ? ordered_json(p) : ordered_json(nullptr));
    jg["rows"] = ordered_json::array();
    for (const auto& r : g.rows) {
      ordered_json jr{{"n_elem", r.n_elem}, {"solved", r.solved}, {"plateau", r.plateau}};
      if (r.solved) {
        jr["qoi"] = r.qoi;
        jr["rel_error"] = r.rel_error;
      } else {
        jr["message"] = r.message;
      }
      jg["rows"].push_back(jr);
    }
    summary["groups"].push_back(jg);
  }

  std::ostringstream lock_csv;
  if (locking) {
    lock_csv << "formulation,t,n_elem,rel_error_full,rel_error_reduced,ratio\n";
    for (const auto& e : locking->entries)
      lock_csv << to_string(e.formulation) << ',' << csv_cell(e.t) << ',' << e.n_elem << ','
               << csv_cell(e.rel_error_full) << ',' << csv_cell(e.rel_error_reduced) << ',' << csv_cell(e.ratio) << '\n';
    if (!locking->thickness_ratios.empty()) {
      ordered_json tr = ordered_json::array();
      for (const auto& x : locking->thickness_ratios)
        tr.push_back({{"formulation", std::string(to_string(x.formulation))},
                      {"quadrature", std::string(to_string(x.policy))},
                      {"n_elem", x.n_elem},
                      {"t", x.t},
                      {"ratio", x.ratio}});
      summary["thickness_ratios"] = tr;
    }
  }

  const fs::path dir = output_dir(o.out);
  prepare(dir);
  write_text(dir / "convergence.csv", csv.str());
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  if (locking) write_text(dir / "locking.csv", lock_csv.str());

  for (const auto& g : rep.groups) {
    out << to_string(g.formulation) << ' ' << to_string(g.policy) << " t=" << format_double(g.t) << ": order "
        << (g.order ? format_double(*g.order) : std::string("-")) << "\n";
    for (const auto& r : g.rows)
      if (!r.solved) out << "  n=" << r.n_elem << " failed: " << r.message << "\n";
  }
  out << "wrote " << (dir / "convergence.csv").string() << "\n";
  return kOk;
}

struct ValidateOptions {
  bool list = false;
  std::vector<int> only;
  double tolerance_scale = 1.0;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  if (o.list) {
    const auto names = criterion_names();
    for (std::size_t i = 0; i < names.size(); ++i) out << i + 1 << ' ' << names[i] << "\n";
    return kOk;
  }
  AcceptanceOptions opts;
  opts.tolerance_scale = o.tolerance_scale;
  opts.only = o.only;
  const auto results = run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) {
    out << format_result(r) << "\n";
    failed += !r.passed;
  }
  out << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed ? kValidateFailed : kOk;
}

struct DemoOptions {
  std::vector<std::string> names;
  std::string out = "out";
  int samples = 101;
};

int cmd_demo(const DemoOptions& o, std::ostream& out) {
  if (o.samples < 2) throw ValidationError("--samples must be at least 2");
  const auto demos = demo_configs();
  std::vector<const DemoConfig*> chosen;
  for (const auto& d : demos)
    if (o.names.empty() || std::find(o.names.begin(), o.names.end(), d.name) != o.names.end()) chosen.push_back(&d);
  for (const auto& n : o.names)
    if (std::none_of(demos.begin(), demos.end(), [&](const DemoConfig& d) { return d.name == n; }))
      throw ValidationError("unknown demo '" + n + "'");

  std::vector<std::pair<std::string, std::vector<CenterlineRow>>> results;
  for (const DemoConfig* d : chosen) {
    const SolvedModel sol =
        solve_model(d->model, Discretization::uniform(d->model.curve.length(), d->formulation, d->elements, d->policy));
    results.emplace_back(d->name, centerline(sol, sample_points(sol, SampleLocation::Uniform, o.samples)));
    const Vec3d u = tip_displacement(sol);
    out << d->name << ": " << d->description << "; tip displacement (" << format_double(u[0]) << ", "
        << format_double(u[1]) << ", " << format_double(u[2]) << ")\n";
  }
  const fs::path dir = output_dir(o.out);
  prepare(dir);
  for (const auto& [name, rows] : results) write_centerline_csv(dir / (name + "_centerline.csv"), rows);
  out << "wrote " << results.size() << " centerline file(s) to " << dir.string() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curved beam finite elements in global Cartesian coordinates"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve a model file; writes centerline.csv, resultants.csv, summary.json");
  solve->add_option("model", so.model, "Model JSON file")->required();
  solve->add_option("--out", so.out, "Output directory (BEAM_OUT overrides)")->capture_default_str();
  solve->add_option("--samples", so.samples, "Uniform sample count along the beam")->capture_default_str();
  solve->add_option("--seed", so.seed, "Reserved; the pipeline is deterministic");

  ConvergeOptions co;
  auto* converge = app.add_subcommand("converge", "Run a convergence study file; writes convergence.csv");
  converge->add_option("study", co.study, "Study JSON file")->required();
  converge->add_option("--out", co.out, "Output directory (BEAM_OUT overrides)")->capture_default_str();
  long long seed = 0;
  converge->add_option("--seed", seed, "Reserved; the pipeline is deterministic");

  ValidateOptions vo;
  auto* validate = app.add_subcommand("validate", "Run the built-in acceptance suite");
  validate->add_flag("--list", vo.list, "Print criterion names without running them");
  validate->add_option("--only", vo.only, "Run only these criterion ids");
  validate->add_option("--tolerance-scale", vo.tolerance_scale)->group("");

  DemoOptions dmo;
  auto* demo = app.add_subcommand("demo", "Solve the built-in demo models; writes <name>_centerline.csv");
  demo->add_option("names", dmo.names, "Demo names (default: all)");
  demo->add_option("--out", dmo.out, "Output directory (BEAM_OUT overrides)")->capture_default_str();
  demo->add_option("--samples", dmo.samples, "Uniform sample count along the beam")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (*solve) return cmd_solve(so, out);
    if (*converge) return cmd_converge(co, out);
    if (*validate) return cmd_validate(vo, out);
    if (*demo) return cmd_demo(dmo, out);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const SingularSystemError& e) {
    err << "error: " << e.what() << "\n";
    return kSingular;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kSchema;
  }
  return kSchema;
}

}  // namespace cbeam::cli
