#include "cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "model_io.hpp"
#include "sofup/sofup.hpp"

namespace sofup::cli {

namespace {

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EigenFailure:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::NumericalInconsistency:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    size_t used = 0;
    GridSpec grid;
    if (x == std::string::npos) {
      grid.n_tau = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      grid.n_theta = grid.n_tau;
    } else {
      const std::string a = text.substr(0, x);
      const std::string b = text.substr(x + 1);
      grid.n_tau = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      grid.n_theta = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
    if (grid.n_tau <= 0 || grid.n_theta <= 0) throw std::invalid_argument(text);
    return grid;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--grid", "expected NxM with positive integers, got " + text);
  }
}

struct Loaded {
  ModelFile model;
  Digest digest;
};

Loaded load_model(const std::string& path) {
  InputFile file = read_json_file(path);
  Loaded loaded{parse_model(file.json), {}};
  loaded.digest.add(file.bytes);
  return loaded;
}

GainMatrix nominal_gain(const ModelFile& file) {
  if (file.F_nominal) return {*file.F_nominal, GainProvenance::nominal};
  return {Matrix::Zero(file.model.m(), file.model.p()), GainProvenance::nominal};
}

// validate ---------------------------------------------------------------

struct ValidateArgs {
  std::string model;
  std::optional<double> rank_tol;
  std::string out;
};

int run_validate(const ValidateArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  const ValidationReport report = rank_report(file.model, args.rank_tol);

  Json doc = Json::object();
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["p"] = report.p;
  doc["rank_B"] = report.rank_B;
  doc["rank_C"] = report.rank_C;
  doc["sigma_min_B"] = report.sigma_min_B;
  doc["sigma_min_C"] = report.sigma_min_C;
  doc["tol_B"] = report.tol_B;
  doc["tol_C"] = report.tol_C;
  bool passes = report.passes;
  std::string failure = report.passes ? "" : "RankDeficient(" + report.offending + ")";
  if (file.F_nominal) {
    const double alpha = spectral_abscissa(closed_loop(file.model, nominal_gain(file)));
    doc["nominal_alpha"] = alpha;
    doc["nominal_stable"] = alpha < 0.0;
    if (!(alpha < 0.0) && passes) {
      passes = false;
      failure = "NotStable";
    }
  }
  doc["passes"] = passes;
  doc["failure"] = passes ? Json(nullptr) : Json(failure);
  doc["offending"] = report.offending.empty() ? Json(nullptr) : Json(report.offending);
  doc["metadata"] = metadata(std::nullopt, loaded.digest);
  write_text(args.out, dump(doc), out);
  return passes ? kExitOk : kExitValidation;
}

// update -----------------------------------------------------------------

struct UpdateArgs {
  std::string model;
  std::string delta;
  std::optional<double> beta;
  std::string out;
};

int run_update(const UpdateArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  validate(file.model);
  if (!file.F_nominal) throw InputError("update needs F_nominal in the model file");

  Matrix delta;
  if (!args.delta.empty()) {
    InputFile d = read_json_file(args.delta);
    loaded.digest.add(d.bytes);
    delta = matrix_from_document(d.json, {"Delta"}, "perturbation");
  } else if (file.Delta) {
    delta = *file.Delta;
  } else {
    throw InputError("update needs Delta in the model file or --delta");
  }

  const UpdateResult result = apply_update(file.model, nominal_gain(file), delta, args.beta);
  Json doc = Json::object();
  doc["G_star"] = matrix_to_json(result.G_star);
  doc["F_updated"] = matrix_to_json(result.F_updated.F);
  doc["J_star"] = result.J_star;
  doc["alpha_closed"] = result.alpha_closed;
  doc["certified"] = result.certified;
  doc["beta"] = args.beta ? Json(*args.beta) : Json(nullptr);
  doc["metadata"] = metadata(std::nullopt, loaded.digest);
  write_text(args.out, dump(doc), out);
  return kExitOk;
}

// mdrp -------------------------------------------------------------------

struct MdrpArgs {
  std::string model;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int starts = 20;
  std::string method = "auto";
  std::size_t threads = 0;
  std::string out;
};

int run_mdrp(const MdrpArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  const Matrix M = closed_loop(file.model, nominal_gain(file));

  Json doc = Json::object();
  const bool symmetric = (M - M.transpose()).norm() <= 1e-10;
  if ((args.method == "auto" && symmetric) || args.method == "symmetric") {
    const double beta = symmetric_exact(M);
    doc["beta"] = beta;
    doc["upper"] = upper_bound(M);
    doc["method"] = to_string(MdrpMethod::symmetric_exact);
    doc["iterations"] = 0;
  } else if (args.method == "upper") {
    const double upper = upper_bound(M);
    doc["beta"] = upper;
    doc["upper"] = upper;
    doc["method"] = to_string(MdrpMethod::upper_bound_only);
    doc["iterations"] = 0;
  } else {
    EstimateOptions options;
    options.tol = args.tol;
    options.seed = args.seed;
    options.inner_starts = args.starts;
    options.threads = args.threads;
    const MdrpEstimate est = estimate(M, options);
    doc["beta"] = est.beta;
    doc["upper"] = est.upper;
    doc["method"] = to_string(est.method);
    doc["iterations"] = est.iterations;
    doc["inner_starts"] = est.inner_starts;
    doc["tol"] = est.tol;
    doc["witness_alpha"] = est.witness_alpha;
  }
  doc["alpha"] = spectral_abscissa(M);
  doc["metadata"] = metadata(args.seed, loaded.digest);
  write_text(args.out, dump(doc), out);
  return kExitOk;
}

// synth ------------------------------------------------------------------

struct SynthArgs {
  std::string model;
  std::optional<double> rho;
  double tau = 1.0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  const std::optional<double> rho = args.rho ? args.rho : file.rho;
  if (!rho) throw InputError("synth needs --rho or rho in the model file");

  const KroneckerFactors factors(file.model.B(), file.model.C());
  Stream stream(args.seed, 0, 0);
  const PerturbationCoords coords = random_coords(factors, *rho, args.tau, args.theta, stream);
  const Perturbation delta = synthesize(factors, coords);

  Json doc = Json::object();
  doc["Delta"] = matrix_to_json(delta.delta());
  doc["rho"] = delta.rho();
  doc["fro_norm"] = delta.fro_norm();
  doc["tau"] = args.tau;
  doc["theta"] = args.theta;
  doc["J_closed"] = closed_form_cost(*rho, args.tau, args.theta);
  doc["metadata"] = metadata(args.seed, loaded.digest);
  write_text(args.out, dump(doc), out);
  return kExitOk;
}

// region -----------------------------------------------------------------

struct RegionArgs {
  double beta = 0.0;
  double rho = 0.0;
  int grid = 101;
  std::string csv;
  std::string out;
};

int run_region(const RegionArgs& args, std::ostream& out) {
  const StabilityRegion region(args.beta, args.rho);
  const double area = region.full_square() ? 1.0 : xi(region.kappa());
  const auto points = boundary(region, args.grid);

  Digest digest;
  digest.add("region").add(format_number(args.beta)).add(format_number(args.rho));
  digest.add(std::to_string(args.grid));

  Json doc = Json::object();
  doc["beta"] = args.beta;
  doc["rho"] = args.rho;
  doc["kappa"] = region.kappa();
  doc["full_square"] = region.full_square();
  doc["xi"] = area;
  doc["xi_percent"] = 100.0 * area;
  Json pts = Json::array();
  for (const auto& [tau, z] : points) pts.push_back(Json::array({tau, z}));
  doc["boundary"] = std::move(pts);
  doc["metadata"] = metadata(std::nullopt, digest);
  write_text(args.out, dump(doc), out);

  if (!args.csv.empty()) {
    std::string text = "# sofup " + std::string(metadata(std::nullopt, digest)["version"]) +
                       " input_digest=" + digest.hex() + "\n";
    text += "tau,zeta\n";
    for (const auto& [tau, z] : points) {
      text += format_number(tau) + "," + format_number(z) + "\n";
    }
    write_text(args.csv, text, out);
  }
  return kExitOk;
}

// scan -------------------------------------------------------------------

struct ScanArgs {
  std::string model;
  std::optional<double> rho;
  double beta = 0.0;
  std::string grid = "41x41";
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out;
  std::string summary;
};

int run_scan(const ScanArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  const std::optional<double> rho = args.rho ? args.rho : file.rho;
  if (!rho) throw InputError("scan needs --rho or rho in the model file");
  if (!file.F_nominal) throw InputError("scan needs F_nominal in the model file");
  const GridSpec grid = parse_grid(args.grid);
  loaded.digest.add(format_number(*rho)).add(format_number(args.beta)).add(args.grid);

  const ScanGrid result =
      scan(file.model, nominal_gain(file), *rho, args.beta, grid, args.seed, args.threads);
  const RegionFraction fractions = region_fraction(result);
  const Json meta = metadata(args.seed, loaded.digest);

  std::string csv = "# sofup " + meta["version"].get<std::string>() + " seed=" +
                    std::to_string(args.seed) + " input_digest=" + loaded.digest.hex() + "\n";
  csv += "tau,theta,J_closed,J_residual,alpha_closed,guaranteed,exact_stable\n";
  for (const ScanCell& c : result.cells) {
    csv += format_number(c.tau) + "," + format_number(c.theta) + "," + format_number(c.J_closed) +
           "," + format_number(c.J_residual) + "," + format_number(c.alpha_closed) + "," +
           (c.guaranteed ? "1" : "0") + "," + (c.exact_stable ? "1" : "0") + "\n";
  }
  if (args.out.empty()) throw InputError("scan needs --out for the CSV table");
  write_text(args.out, csv, out);

  const StabilityRegion region(args.beta, *rho);
  Json doc = Json::object();
  doc["cells"] = result.cells.size();
  doc["kappa"] = region.kappa();
  doc["xi"] = region.full_square() ? 1.0 : xi(region.kappa());
  doc["guaranteed_frac"] = fractions.guaranteed_frac;
  doc["exact_frac"] = fractions.exact_frac;
  doc["violations"] = fractions.violations;
  doc["metadata"] = meta;
  write_text(args.summary, dump(doc), out);
  return kExitOk;
}

// sim --------------------------------------------------------------------

struct SimArgs {
  std::string model;
  std::string gain;
  std::string delta;
  std::string x0;
  double t_end = 10.0;
  double dt = 1e-3;
  std::string out;
  std::string reference_gain;
  std::string error_out;
};

std::string trajectory_csv(const Trajectory& traj, const std::string& header_comment) {
  std::string text = header_comment;
  const Index n = traj.states.front().size();
  const Index m = traj.inputs.front().size();
  text += "t";
  for (Index i = 1; i <= n; ++i) text += ",x" + std::to_string(i);
  for (Index i = 1; i <= m; ++i) text += ",u" + std::to_string(i);
  text += "\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    text += format_number(traj.times[k]);
    for (Index i = 0; i < n; ++i) text += "," + format_number(traj.states[k](i));
    for (Index i = 0; i < m; ++i) text += "," + format_number(traj.inputs[k](i));
    text += "\n";
  }
  return text;
}

GainMatrix load_gain(const std::string& path, Digest& digest) {
  InputFile file = read_json_file(path);
  digest.add(file.bytes);
  return {matrix_from_document(file.json, {"F", "F_updated", "F_nominal"}, "gain"),
          GainProvenance::external};
}

int run_sim(const SimArgs& args, std::ostream& out) {
  Loaded loaded = load_model(args.model);
  const ModelFile& file = loaded.model;
  const GainMatrix gain = load_gain(args.gain, loaded.digest);

  std::optional<Matrix> delta;
  if (!args.delta.empty()) {
    InputFile d = read_json_file(args.delta);
    loaded.digest.add(d.bytes);
    delta = matrix_from_document(d.json, {"Delta"}, "perturbation");
  }
  InputFile x0_file = read_json_file(args.x0);
  loaded.digest.add(x0_file.bytes);
  const Vector x0 = x0_file.json.is_object() && x0_file.json.contains("x0")
                        ? parse_vector(x0_file.json["x0"], "x0")
                        : parse_vector(x0_file.json, "x0");

  const Matrix* delta_ptr = delta ? &*delta : nullptr;
  const Trajectory traj = simulate(file.model, gain, delta_ptr, x0, args.t_end, args.dt);
  const std::string comment = "# sofup " + metadata(std::nullopt, loaded.digest)["version"].get<std::string>() +
                              " input_digest=" + loaded.digest.hex() + "\n";
  if (args.out.empty()) throw InputError("sim needs --out for the trajectory CSV");
  write_text(args.out, trajectory_csv(traj, comment), out);

  if (!args.reference_gain.empty()) {
    const GainMatrix reference = load_gain(args.reference_gain, loaded.digest);
    const Trajectory ref = simulate(file.model, reference, delta_ptr, x0, args.t_end, args.dt);
    const std::vector<double> err = input_relative_error(traj, ref);
    std::string text = comment + "t,relative_error_percent\n";
    for (size_t k = 0; k < err.size(); ++k) {
      text += format_number(traj.times[k]) + "," + format_number(err[k]) + "\n";
    }
    write_text(args.error_out, text, out);
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form static output feedback updates with stability certificates", "sofup"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SOFUP_VERSION);

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Check rank conditions on B and C");
  validate_cmd->add_option("--model", validate_args.model, "Model JSON file")->required();
  validate_cmd->add_option("--rank-tol", validate_args.rank_tol, "Absolute rank tolerance");
  validate_cmd->add_option("--out", validate_args.out, "Report path (default stdout)");

  UpdateArgs update_args;
  auto* update_cmd = app.add_subcommand("update", "Closed-form gain update for a known Delta");
  update_cmd->add_option("--model", update_args.model, "Model JSON with F_nominal and Delta")->required();
  update_cmd->add_option("--delta", update_args.delta, "Perturbation JSON overriding the model's Delta");
  update_cmd->add_option("--beta", update_args.beta, "MDRP value used for certification")
      ->check(CLI::PositiveNumber);
  update_cmd->add_option("--out", update_args.out, "Result path (default stdout)");

  MdrpArgs mdrp_args;
  auto* mdrp_cmd = app.add_subcommand("mdrp", "Estimate the MDRP of A + B F_nominal C");
  mdrp_cmd->add_option("--model", mdrp_args.model, "Model JSON file")->required();
  mdrp_cmd->add_option("--tol", mdrp_args.tol, "Bisection bracket width (default 1e-3 * upper bound)")
      ->check(CLI::PositiveNumber);
  mdrp_cmd->add_option("--seed", mdrp_args.seed, "Random seed");
  mdrp_cmd->add_option("--starts", mdrp_args.starts, "Inner search restarts")->check(CLI::PositiveNumber);
  mdrp_cmd->add_option("--method", mdrp_args.method, "auto | bisection | symmetric | upper")
      ->check(CLI::IsMember({"auto", "bisection", "symmetric", "upper"}));
  mdrp_cmd->add_option("--threads", mdrp_args.threads, "Worker threads (default SOFUP_THREADS)");
  mdrp_cmd->add_option("--out", mdrp_args.out, "Result path (default stdout)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize Delta from (rho, tau, theta)");
  synth_cmd->add_option("--model", synth_args.model, "Model JSON file")->required();
  synth_cmd->add_option("--rho", synth_args.rho, "Frobenius bound")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--tau", synth_args.tau, "Size coordinate in (0, 1]")->required();
  synth_cmd->add_option("--theta", synth_args.theta, "Split coordinate in [0, 1]")->required();
  synth_cmd->add_option("--seed", synth_args.seed, "Seed for the unit directions");
  synth_cmd->add_option("--out", synth_args.out, "Perturbation JSON path (default stdout)");

  RegionArgs region_args;
  auto* region_cmd = app.add_subcommand("region", "Guaranteed stability region and its area");
  region_cmd->add_option("--beta", region_args.beta, "MDRP value")->required()->check(CLI::PositiveNumber);
  region_cmd->add_option("--rho", region_args.rho, "Perturbation bound")->required()->check(CLI::PositiveNumber);
  region_cmd->add_option("--grid", region_args.grid, "Boundary points")->check(CLI::Range(1, 1000000));
  region_cmd->add_option("--csv", region_args.csv, "Boundary CSV path");
  region_cmd->add_option("--out", region_args.out, "JSON path (default stdout)");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Guaranteed vs exact stability over a (tau, theta) grid");
  scan_cmd->add_option("--model", scan_args.model, "Model JSON with F_nominal")->required();
  scan_cmd->add_option("--rho", scan_args.rho, "Perturbation bound")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--beta", scan_args.beta, "MDRP value")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--grid", scan_args.grid, "Grid as NTAUxNTHETA");
  scan_cmd->add_option("--seed", scan_args.seed, "Random seed");
  scan_cmd->add_option("--threads", scan_args.threads, "Worker threads (default SOFUP_THREADS)");
  scan_cmd->add_option("--out", scan_args.out, "CSV path")->required();
  scan_cmd->add_option("--summary", scan_args.summary, "Summary JSON path (default stdout)");

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand("sim", "RK4 simulation of the closed loop");
  sim_cmd->add_option("--model", sim_args.model, "Model JSON file")->required();
  sim_cmd->add_option("--gain", sim_args.gain, "Gain JSON (F, F_updated or bare array)")->required();
  sim_cmd->add_option("--delta", sim_args.delta, "Perturbation JSON");
  sim_cmd->add_option("--x0", sim_args.x0, "Initial state JSON")->required();
  sim_cmd->add_option("--t", sim_args.t_end, "End time")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--dt", sim_args.dt, "Step size")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim_args.out, "Trajectory CSV path")->required();
  auto* ref_opt = sim_cmd->add_option("--reference-gain", sim_args.reference_gain,
                                      "Second gain for the relative input error");
  sim_cmd->add_option("--error-out", sim_args.error_out, "Relative input error CSV path")
      ->needs(ref_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SOFUP_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sofup: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (const auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(validate_args, out);
    if (update_cmd->parsed()) return run_update(update_args, out);
    if (mdrp_cmd->parsed()) return run_mdrp(mdrp_args, out);
    if (synth_cmd->parsed()) return run_synth(synth_args, out);
    if (region_cmd->parsed()) return run_region(region_args, out);
    if (scan_cmd->parsed()) return run_scan(scan_args, out);
    if (sim_cmd->parsed()) return run_sim(sim_args, out);
  } catch (const Error& e) {
    err << "sofup: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const IoError& e) {
    err << "sofup: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const InputError& e) {
    err << "sofup: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CLI::ValidationError& e) {
    err << "sofup: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace sofup::cli
