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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sketchlsr/cli.hpp"
#include "sketchlsr/io.hpp"
#include "sketchlsr/serialization.hpp"

using namespace sketchlsr;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "sketchlsr_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string path_str(const std::string& name) { return (scratch() / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(scratch() / name) << text; }

// Generates a problem once per process; later calls reuse the files.
void ensure_problem() {
  static bool done = false;
  if (done) return;
  const Run g = run({"generate", "--n", "512", "--d", "6", "--kappa", "20", "--gamma", "0.8", "--seed", "4",
                     "--x-out", path_str("x.mtx"), "--y-out", path_str("y.csv")});
  REQUIRE(g.code == cli::kExitOk);
  done = true;
}

std::vector<std::string> solve_args(const std::string& method, const std::string& c) {
  return {"solve", "--x", path_str("x.mtx"), "--y", path_str("y.csv"), "--method", method, "--c", c, "--seed", "17"};
}

const char* kConfig = R"({
  "problem": {"n": 400, "d": 5, "coherence": "spiked", "spike_k": 2, "kappa": 10, "gamma": 0.9, "seed": 2},
  "sampler": {"kind": "leverage", "weighting": "inverse_sqrt"},
  "c_grid": [40, 80, 160],
  "trials": 30,
  "eps": 0.5,
  "master_seed": 8,
  "best_of": 1
})";

std::string config_error_pointer(const std::string& text) {
  write("bad.json", text);
  const Run r = run({"experiment", "--config", path_str("bad.json")});
  if (r.code != cli::kExitInputError) return "exit " + std::to_string(r.code);
  const auto at = r.err.find('/');
  return at == std::string::npos ? r.err : r.err.substr(at, r.err.find(':', at) - at);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exact solve has error ratio 1") {
    ensure_problem();
    const Run r = run({"solve", "--x", path_str("x.mtx"), "--y", path_str("y.csv"), "--method", "exact"});
    REQUIRE(r.code == cli::kExitOk);
    const json p = r.doc()["payload"];
    CHECK(p["error_ratio"].get<double>() == 1.0);
    CHECK(p["n"] == 512);
    CHECK(p["d"] == 6);
    CHECK(p["gamma"].get<double>() == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(p["kappa"].get<double>() == doctest::Approx(20.0).epsilon(1e-8));
    const json env = r.doc();
    for (const char* key : {"tool_version", "command", "config_echo", "started_at", "finished_at", "timings"}) {
      CHECK(env.contains(key));
    }
  }

  TEST_CASE("uniform sketch of every row reproduces the exact fit") {
    ensure_problem();
    const Run r = run(solve_args("uniform", "512"));
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.doc()["payload"]["error_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("solve payloads are reproducible and thread independent") {
    ensure_problem();
    for (const char* method : {"leverage", "uniform", "srht", "sparse"}) {
      CAPTURE(method);
      auto args = solve_args(method, "64");
      auto a = args, b = args;
      a.insert(a.end(), {"--threads", "1"});
      b.insert(b.end(), {"--threads", "8"});
      const Run ra = run(a), rb = run(b);
      REQUIRE(ra.code == cli::kExitOk);
      REQUIRE(rb.code == cli::kExitOk);
      CHECK(ra.doc()["payload"].dump() == rb.doc()["payload"].dump());
      const json cert = ra.doc()["payload"]["certificate"];
      CHECK(cert.dump().find("false") == std::string::npos);
    }
  }

  TEST_CASE("sketch round trip through --sketch-out and --sketch-in") {
    ensure_problem();
    auto save = solve_args("srht", "48");
    save.insert(save.end(), {"--sketch-out", path_str("op.json")});
    const Run a = run(save);
    REQUIRE(a.code == cli::kExitOk);
    const Run b = run({"solve", "--x", path_str("x.mtx"), "--y", path_str("y.csv"), "--method", "srht", "--sketch-in",
                       path_str("op.json")});
    REQUIRE(b.code == cli::kExitOk);
    CHECK(a.doc()["payload"]["beta_tilde"] == b.doc()["payload"]["beta_tilde"]);

    std::ifstream in(path_str("op.json"));
    const json op = json::parse(in);
    CHECK(serialization::to_json(serialization::sketch_from_json(op)) == op);
  }

  TEST_CASE("experiment payloads are reproducible and thread independent") {
    write("cfg.json", kConfig);
    const Run a = run({"experiment", "--config", path_str("cfg.json"), "--threads", "1"});
    const Run b = run({"experiment", "--config", path_str("cfg.json"), "--threads", "8", "--csv", path_str("out.csv")});
    REQUIRE(a.code == cli::kExitOk);
    REQUIRE(b.code == cli::kExitOk);
    CHECK(a.doc()["payload"].dump() == b.doc()["payload"].dump());
    const json per_c = a.doc()["payload"]["per_c"];
    REQUIRE(per_c.size() == 3);
    CHECK(per_c[0]["ratios"].size() == 30);

    std::ifstream csv(path_str("out.csv"));
    std::string header, row;
    std::getline(csv, header);
    CHECK(header == "c,rate,ci_low,ci_high,p50,p90,p99,max,mean_wall_time");
    int rows = 0;
    while (std::getline(csv, row)) {
      if (row.empty()) continue;
      CHECK(std::count(row.begin(), row.end(), ',') == 8);
      ++rows;
    }
    CHECK(rows == 3);
  }

  TEST_CASE("config errors name the offending field") {
    json cfg = json::parse(kConfig);
    cfg["trials"] = 0;
    CHECK(config_error_pointer(cfg.dump()) == "/trials");
    cfg = json::parse(kConfig);
    cfg["sampler"]["kind"] = "uniform";
    cfg["c_grid"][1] = 100000;
    CHECK(config_error_pointer(cfg.dump()) == "/c_grid/1");
    cfg = json::parse(kConfig);
    cfg["problem"]["gamma"] = 1.5;
    CHECK(config_error_pointer(cfg.dump()) == "/problem/gamma");
    cfg = json::parse(kConfig);
    cfg["sampler"]["kind"] = "gaussian";
    CHECK(config_error_pointer(cfg.dump()) == "/sampler/kind");
    cfg = json::parse(kConfig);
    cfg["surprise"] = 1;
    CHECK(config_error_pointer(cfg.dump()) == "/surprise");
    cfg = json::parse(kConfig);
    cfg["problem"].erase("n");
    CHECK(config_error_pointer(cfg.dump()) == "/problem/n");
    CHECK(config_error_pointer("{not json") != "exit 0");
  }

  TEST_CASE("bounds command") {
    const Run t2 = run({"bounds", "--calc", "t2", "--d", "2", "--mu", "2"});
    REQUIRE(t2.code == cli::kExitOk);
    CHECK(t2.doc()["payload"]["value"] == 30773);
    const Run t1 = run({"bounds", "--calc", "t1", "--d", "20", "--eps", "0.5"});
    CHECK(t1.doc()["payload"]["value"] == 16000);
    const Run boost = run({"bounds", "--calc", "boost", "--t", "1"});
    CHECK(boost.doc()["payload"]["value"].get<double>() == doctest::Approx(0.05));
    CHECK(run({"bounds", "--calc", "t1", "--d", "20", "--eps", "2"}).code == cli::kExitInputError);
    CHECK(run({"bounds", "--calc", "nope"}).code == cli::kExitInputError);
  }

  TEST_CASE("exit codes") {
    ensure_problem();
    CHECK(run({}).code == cli::kExitInputError);
    CHECK(run({"solve", "--bogus"}).code == cli::kExitInputError);
    CHECK(run({"solve", "--x", path_str("missing.mtx"), "--y", path_str("y.csv"), "--method", "exact"}).code ==
          cli::kExitInputError);
    CHECK(run(solve_args("gaussian", "10")).code == cli::kExitInputError);
    auto literal = solve_args("leverage", "64");
    literal.push_back("--literal-alg1-weights");
    CHECK(run(literal).code == cli::kExitOk);
    CHECK(run(solve_args("uniform", "100000")).code == cli::kExitInputError);

    // Two identical columns: X has rank 1.
    write("rank1.mtx", "%%MatrixMarket matrix array real general\n3 2\n1\n2\n3\n1\n2\n3\n");
    write("rank1_y.csv", "1\n0\n1\n");
    CHECK(run({"solve", "--x", path_str("rank1.mtx"), "--y", path_str("rank1_y.csv"), "--method", "exact"}).code ==
          cli::kExitNumericalError);

    write("short_y.csv", "1\n2\n");
    CHECK(run({"solve", "--x", path_str("x.mtx"), "--y", path_str("short_y.csv"), "--method", "exact"}).code == cli::kExitInputError);
  }

  TEST_CASE("generate writes readable files") {
    const Run g = run({"generate", "--n", "50", "--d", "3", "--coherence", "one_hot", "--seed", "1", "--x-out",
                       path_str("g.mtx"), "--y-out", path_str("g.mtx.y.mtx")});
    REQUIRE(g.code == cli::kExitOk);
    const DenseMatrix x = io::read_matrix_market(scratch() / "g.mtx");
    CHECK(x.rows() == 50);
    CHECK(x.cols() == 3);
    CHECK(io::read_vector(scratch() / "g.mtx.y.mtx").size() == 50);
  }
}
