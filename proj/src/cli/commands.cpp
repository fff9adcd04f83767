// Copyright 2026 the sketchlsr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sketchlsr/bounds.hpp"
#include "sketchlsr/cli.hpp"
#include "sketchlsr/errors.hpp"
#include "sketchlsr/harness.hpp"
#include "sketchlsr/io.hpp"
#include "sketchlsr/serialization.hpp"
#include "sketchlsr/solver.hpp"

namespace sketchlsr::cli {
namespace {

using serialization::Json;
using serialization::number;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag) {
    if (*flag == 0) throw DomainError("--threads must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("SKETCHLSR_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw DomainError("SKETCHLSR_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
  if (!f) throw DomainError("write to '" + path + "' failed");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct Envelope {
  std::string command;
  Json config_echo;
  std::string started_at;
  Json payload;
  Json timings = Json::object();

  // Timestamps and wall times sit outside `payload`, which is a pure
  // function of config_echo.
  Json to_json() const {
    return Json{{"tool_version", SKETCHLSR_VERSION}, {"command", command},   {"config_echo", config_echo},
                {"started_at", started_at},         {"finished_at", utc_now()}, {"payload", payload},
                {"timings", timings}};
  }
};

void emit(const Envelope& env, const std::string& out_path, std::ostream& out) {
  const std::string text = env.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
  }
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string x_path;
  std::string y_path;
  std::string y_format = "auto";
  std::string method;
  std::optional<std::size_t> c;
  std::uint64_t seed = 0;
  bool literal_weights = false;
  std::string sketch_in;
  std::string sketch_out;
  std::string out;
  std::optional<std::size_t> threads;
};

io::VectorFormat parse_vector_format(const std::string& name) {
  if (name == "auto") return io::VectorFormat::automatic;
  if (name == "mtx") return io::VectorFormat::matrix_market;
  if (name == "csv") return io::VectorFormat::csv;
  throw DomainError("--y-format must be auto, mtx or csv");
}

Envelope run_solve(const SolveArgs& a) {
  Envelope env{"solve", Json::object(), utc_now(), Json::object()};
  env.config_echo = Json{{"x", a.x_path},
                         {"y", a.y_path},
                         {"y_format", a.y_format},
                         {"method", a.method},
                         {"seed", a.seed},
                         {"literal_weights", a.literal_weights}};
  if (a.c) env.config_echo["c"] = *a.c;
  if (!a.sketch_in.empty()) env.config_echo["sketch_in"] = a.sketch_in;
  resolve_threads(a.threads);

  const auto t_read = Clock::now();
  RegressionProblem problem(io::read_matrix_market(a.x_path), io::read_vector(a.y_path, parse_vector_format(a.y_format)));
  env.timings["read_s"] = seconds_since(t_read);

  const auto t_exact = Clock::now();
  const PreparedProblem prepared = prepare(std::move(problem));
  env.timings["exact_s"] = seconds_since(t_exact);

  Json& p = env.payload;
  p["method"] = a.method;
  p["n"] = prepared.problem.n();
  p["d"] = prepared.problem.d();
  p["residual_sq_exact"] = number(prepared.exact.residual_sq);
  p["gamma"] = number(prepared.gamma);
  p["kappa"] = number(prepared.kappa);
  p["coherence"] = number(prepared.leverage.coherence);

  if (a.method == "exact") {
    p["beta_tilde"] = Json::array();
    for (double b : prepared.exact.beta) p["beta_tilde"].push_back(number(b));
    p["c_realized"] = prepared.problem.n();
    p["residual_sq_full"] = number(prepared.exact.residual_sq);
    p["error_ratio"] = 1.0;
    return env;
  }

  SketchOperator op;
  const auto t_sketch = Clock::now();
  if (!a.sketch_in.empty()) {
    op = serialization::sketch_from_json(read_json_file(a.sketch_in));
    if (op.kind != parse_sketch_kind(a.method)) {
      throw DomainError("--sketch-in holds a " + std::string(to_string(op.kind)) + " sketch but --method is " + a.method);
    }
  } else {
    if (!a.c) throw DomainError("--c is required for --method " + a.method);
    SamplerConfig sampler{parse_sketch_kind(a.method), *a.c,
                          a.literal_weights ? LeverageWeighting::literal_inverse : LeverageWeighting::inverse_sqrt};
    SeededRng rng(a.seed, 0);
    op = draw_sketch(sampler, prepared, rng);
  }
  env.timings["sketch_s"] = seconds_since(t_sketch);
  if (!a.sketch_out.empty()) write_text(a.sketch_out, serialization::to_json(op).dump() + "\n");

  const SketchedSolution sol = solve_sketched(prepared.problem, op);
  env.timings["apply_s"] = std::chrono::duration<double>(sol.apply_time).count();
  env.timings["solve_s"] = std::chrono::duration<double>(sol.solve_time).count();

  const CertificateReport report = certify(prepared, op, sol);
  const CertificateCheck chk = check(report);
  if (!chk.equality) throw CertificateViolation("residual decomposition identity failed", a.seed, 0);

  p["seed"] = a.seed;
  p["c_target"] = op.c_target;
  p["c_realized"] = sol.c_realized;
  p["beta_tilde"] = Json::array();
  for (double b : sol.beta_tilde) p["beta_tilde"].push_back(number(b));
  p["residual_sq_full"] = number(sol.residual_sq_full);
  p["residual_sq_sketched"] = number(sol.residual_sq_sketched);
  p["error_ratio"] = number(error_ratio(prepared, sol));
  p["rank_deficient"] = sol.rank_deficient;
  p["certificate"] = serialization::to_json(report, chk);
  return env;
}

// ---- experiment -----------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string csv;
  std::string out;
  std::optional<std::size_t> threads;
};

Envelope run_experiment_cmd(const ExperimentArgs& a) {
  Envelope env{"experiment", Json::object(), utc_now(), Json::object()};
  const harness::ExperimentConfig config = serialization::experiment_config_from_json(read_json_file(a.config));
  env.config_echo = serialization::to_json(config);
  const std::size_t threads = resolve_threads(a.threads);

  const auto start = Clock::now();
  const harness::TrialStats stats = harness::run_experiment(config, threads);
  env.timings["total_s"] = seconds_since(start);
  env.timings["threads"] = threads;
  Json per_c = Json::array();
  for (const auto& s : stats.per_c) per_c.push_back(Json{{"c", s.c}, {"mean_wall_time_s", number(s.mean_wall_time_s)}});
  env.timings["per_c"] = std::move(per_c);

  env.payload = serialization::to_json(stats);
  env.payload["parameter_note"] = "problem sizes, trial counts and c grids are user-chosen desk-scale settings";
  if (!a.csv.empty()) write_text(a.csv, serialization::to_csv(stats));
  return env;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::string calc;
  std::optional<double> d, eps, c_lnd, mu, theta, theta1, theta2, delta1, delta2, xi, r, t, c;
  std::optional<double> x_fro, y_fro, x_spec, c_spec, scale, kappa, gamma, beta_norm;
  std::string side = "lower";
  std::string variant = "frobenius";
  std::string out;
};

double need(const std::optional<double>& v, const char* flag, const std::string& calc) {
  if (!v) throw DomainError("--calc " + calc + " requires " + flag);
  return *v;
}

std::size_t as_count(double v, const char* flag) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) throw DomainError(std::string(flag) + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Envelope run_bounds(const BoundsArgs& a) {
  Envelope env{"bounds", Json::object(), utc_now(), Json::object()};
  const std::string& k = a.calc;
  Json inputs = Json::object();
  auto in = [&](const char* name, const std::optional<double>& v, const char* flag) {
    const double x = need(v, flag, k);
    inputs[name] = number(x);
    return x;
  };
  auto opt = [&](const char* name, const std::optional<double>& v, double fallback) {
    const double x = v.value_or(fallback);
    inputs[name] = number(x);
    return x;
  };

  Json value;
  if (k == "t1") {
    const auto d = as_count(in("d", a.d, "--d"), "--d");
    const double eps = in("eps", a.eps, "--eps");
    value = bounds::leverage_sampling_size(d, eps, opt("c_lnd", a.c_lnd, 20.0));
  } else if (k == "t2") {
    const auto d = as_count(in("d", a.d, "--d"), "--d");
    value = bounds::uniform_sampling_size(d, in("mu", a.mu, "--mu"));
  } else if (k == "uniform") {
    const auto d = as_count(in("d", a.d, "--d"), "--d");
    const double mu = in("mu", a.mu, "--mu");
    const double th1 = opt("theta1", a.theta1, bounds::kUniformTheta1);
    const double th2 = opt("theta2", a.theta2, bounds::kUniformTheta2);
    const double d1 = opt("delta1", a.delta1, bounds::kUniformDelta12);
    const double d2 = opt("delta2", a.delta2, bounds::kUniformDelta12);
    value = bounds::uniform_sampling_size_general(d, mu, th1, th2, d1, d2);
  } else if (k == "chernoff") {
    bounds::ChernoffParams params;
    bounds::ChernoffSide side;
    if (a.side == "lower") {
      side = bounds::ChernoffSide::lower;
    } else if (a.side == "upper") {
      side = bounds::ChernoffSide::upper;
    } else {
      throw DomainError("--side must be lower or upper");
    }
    inputs["side"] = a.side;
    const double theta = in("theta", a.theta, "--theta");
    const double xi = in("xi", a.xi, "--xi");
    params.R = opt("R", a.r, 1.0);
    params.d = as_count(in("d", a.d, "--d"), "--d");
    (side == bounds::ChernoffSide::lower ? params.theta1 : params.theta2) = theta;
    (side == bounds::ChernoffSide::lower ? params.xi_min : params.xi_max) = xi;
    value = number(bounds::chernoff_tail(params, side));
  } else if (k == "boost") {
    value = number(bounds::boost_success(as_count(in("t", a.t, "--t"), "--t")));
  } else if (k == "matmul") {
    bounds::MatmulVariant variant;
    if (a.variant == "frobenius") {
      variant = bounds::MatmulVariant::frobenius;
    } else if (a.variant == "spectral") {
      variant = bounds::MatmulVariant::spectral;
    } else {
      throw DomainError("--variant must be frobenius or spectral");
    }
    inputs["variant"] = a.variant;
    const auto c = as_count(in("c", a.c, "--c"), "--c");
    const double x_fro = in("x_fro", a.x_fro, "--x-fro");
    double y_fro = 0.0;
    double x_spec = 0.0;
    double c_spec = 1.0;
    if (variant == bounds::MatmulVariant::frobenius) {
      y_fro = in("y_fro", a.y_fro, "--y-fro");
    } else {
      x_spec = in("x_spec", a.x_spec, "--x-spec");
      c_spec = opt("c_spec", a.c_spec, 1.0);
    }
    value = number(bounds::matmul_expected_bound(x_fro, y_fro, x_spec, c, variant, c_spec));
  } else if (k == "beta") {
    const double scale = in("scale", a.scale, "--scale");
    const double kappa = in("kappa", a.kappa, "--kappa");
    const double gamma = in("gamma", a.gamma, "--gamma");
    value = number(bounds::beta_error_bound(scale, kappa, gamma, in("beta_norm", a.beta_norm, "--beta-norm")));
  } else {
    throw DomainError("--calc must be one of t1, t2, uniform, chernoff, boost, matmul, beta");
  }
  env.config_echo = Json{{"calc", k}, {"inputs", inputs}};
  env.payload = Json{{"calc", k}, {"inputs", std::move(inputs)}, {"value", std::move(value)}};
  return env;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  harness::ProblemSpec spec;
  std::string coherence = "incoherent";
  std::string x_out;
  std::string y_out;
  std::string out;
};

Envelope run_generate(GenerateArgs a) {
  Envelope env{"generate", Json::object(), utc_now(), Json::object()};
  a.spec.coherence = serialization::parse_coherence_profile(a.coherence);
  const harness::GeneratedProblem g = harness::generate_problem(a.spec);
  io::write_matrix_market(a.x_out, g.problem.X());
  const auto& y = g.problem.y();
  std::string ext = std::filesystem::path(a.y_out).extension().string();
  if (ext == ".mtx") {
    io::write_matrix_market(a.y_out, DenseMatrix::column_vector(y));
  } else {
    std::string text;
    for (double v : y) text += io::format_double(v) + "\n";
    write_text(a.y_out, text);
  }
  env.config_echo = Json{{"n", a.spec.n},         {"d", a.spec.d},         {"coherence", a.coherence},
                         {"spike_k", a.spec.spike_k}, {"kappa", number(a.spec.kappa)}, {"gamma", number(a.spec.gamma)},
                         {"seed", a.spec.seed},    {"x_out", a.x_out},     {"y_out", a.y_out}};
  Json beta = Json::array();
  for (double b : g.beta_star) beta.push_back(number(b));
  env.payload = Json{{"achieved_mu", number(g.achieved_mu)},
                     {"achieved_gamma", number(g.achieved_gamma)},
                     {"achieved_kappa", number(g.achieved_kappa)},
                     {"beta_star", std::move(beta)}};
  return env;
}

int report(std::ostream& err, const char* kind, const std::string& what, int code) {
  err << "sketchlsr: " << kind << ": " << what << '\n';
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sketch-and-solve least squares: solves, Monte Carlo experiments and bound calculators.", "sketchlsr"};
  app.set_version_flag("--version", SKETCHLSR_VERSION);
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one problem exactly or with a sketch");
  s->add_option("--x", solve.x_path, "Design matrix (Matrix Market)")->required();
  s->add_option("--y", solve.y_path, "Response vector (.mtx or one value per line)")->required();
  s->add_option("--y-format", solve.y_format, "auto | mtx | csv");
  s->add_option("--method", solve.method, "exact | leverage | uniform | srht | sparse")
      ->required()
      ->check(CLI::IsMember({"exact", "leverage", "uniform", "srht", "sparse"}));
  s->add_option("--c", solve.c, "Sketch size");
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_flag("--literal-weights,--literal-alg1-weights", solve.literal_weights, "Weight leverage samples by 1/p instead of 1/sqrt(p)");
  s->add_option("--sketch-in", solve.sketch_in, "Replay a sketch operator saved with --sketch-out");
  s->add_option("--sketch-out", solve.sketch_out, "Save the sketch operator as JSON");
  s->add_option("--out", solve.out, "Write the result envelope here instead of stdout");
  s->add_option("--threads", solve.threads, "Worker threads (default: SKETCHLSR_THREADS or all cores)");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Run a seeded Monte Carlo sweep over sketch sizes");
  e->add_option("--config", exp.config, "Experiment configuration (JSON)")->required();
  e->add_option("--csv", exp.csv, "Write per-c summary rows as CSV");
  e->add_option("--out", exp.out, "Write the result envelope here instead of stdout");
  e->add_option("--threads", exp.threads, "Worker threads (default: SKETCHLSR_THREADS or all cores)");

  BoundsArgs b;
  auto* bc = app.add_subcommand("bounds", "Evaluate a closed-form sample size or tail bound");
  bc->add_option("--calc", b.calc, "t1 | t2 | uniform | chernoff | boost | matmul | beta")->required();
  bc->add_option("--d", b.d);
  bc->add_option("--eps", b.eps);
  bc->add_option("--c-lnd", b.c_lnd, "Constant on the d ln d term of t1 (default 20)");
  bc->add_option("--mu", b.mu);
  bc->add_option("--theta", b.theta);
  bc->add_option("--theta1", b.theta1);
  bc->add_option("--theta2", b.theta2);
  bc->add_option("--delta1", b.delta1);
  bc->add_option("--delta2", b.delta2);
  bc->add_option("--xi", b.xi);
  bc->add_option("--R", b.r);
  bc->add_option("--side", b.side, "lower | upper");
  bc->add_option("--t", b.t);
  bc->add_option("--c", b.c);
  bc->add_option("--x-fro", b.x_fro);
  bc->add_option("--y-fro", b.y_fro);
  bc->add_option("--x-spec", b.x_spec);
  bc->add_option("--c-spec", b.c_spec);
  bc->add_option("--variant", b.variant, "frobenius | spectral");
  bc->add_option("--scale", b.scale);
  bc->add_option("--kappa", b.kappa);
  bc->add_option("--gamma", b.gamma);
  bc->add_option("--beta-norm", b.beta_norm);
  bc->add_option("--out", b.out, "Write the result envelope here instead of stdout");

  GenerateArgs g;
  auto* gc = app.add_subcommand("generate", "Write a synthetic problem with controlled coherence, gamma and kappa");
  gc->add_option("--n", g.spec.n)->required();
  gc->add_option("--d", g.spec.d)->required();
  gc->add_option("--coherence", g.coherence, "incoherent | spiked | one_hot");
  gc->add_option("--spike-k", g.spec.spike_k);
  gc->add_option("--kappa", g.spec.kappa);
  gc->add_option("--gamma", g.spec.gamma);
  gc->add_option("--seed", g.spec.seed);
  gc->add_option("--x-out", g.x_out)->required();
  gc->add_option("--y-out", g.y_out)->required();
  gc->add_option("--out", g.out, "Write the result envelope here instead of stdout");

  std::vector<const char*> argv{"sketchlsr"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& ok) {
    return app.exit(ok, out, err);
  } catch (const CLI::ParseError& pe) {
    app.exit(pe, out, err);
    return kExitInputError;
  }

  try {
    if (s->parsed()) emit(run_solve(solve), solve.out, out);
    if (e->parsed()) emit(run_experiment_cmd(exp), exp.out, out);
    if (bc->parsed()) emit(run_bounds(b), b.out, out);
    if (gc->parsed()) emit(run_generate(g), g.out, out);
  } catch (const ConfigError& ce) {
    return report(err, "invalid configuration", ce.what(), kExitInputError);
  } catch (const DomainError& de) {
    return report(err, "input error", de.what(), kExitInputError);
  } catch (const ParseError& pe) {
    return report(err, "parse error", pe.what(), kExitInputError);
  } catch (const Error& ne) {
    return report(err, "numerical error", ne.what(), kExitNumericalError);
  }
  return kExitOk;
}

}  // namespace sketchlsr::cli
