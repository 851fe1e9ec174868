// Copyright 2026 The qnogo Authors
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

// qnogo <experiment> [--config PATH] [--seed U64] [--out DIR]
//                    [--format json|csv] [--tolerance F64] [--workers N]
//
// Writes <out>/<experiment>.<format> and <out>/<experiment>.timings.json.
// The output directory defaults to $QNOGO_OUT_DIR, then ".". Exit status:
// 0 all checks pass, 1 some check failed, 2 usage or runtime error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qnogo/hilbert.hpp"
#include "qnogo/lab.hpp"

namespace {

namespace fs = std::filesystem;
using qnogo::lab::Json;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::string out_dir;
  std::string format = "json";
  unsigned workers = 0;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qnogo::Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw qnogo::Error("failed writing " + path.string());
}

int run_experiment(const std::string& name, const Options& opt) {
  Json doc = Json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw qnogo::Error("cannot read config " + opt.config_path);
    doc = Json::parse(in);
  }
  if (doc.is_object() && doc.contains("experiment") && doc["experiment"] != name) {
    throw qnogo::Error("config names experiment '" + doc["experiment"].get<std::string>() +
                       "' but the subcommand is '" + name + "'");
  }
  if (doc.is_object()) doc["experiment"] = name;
  qnogo::lab::ExperimentConfig cfg = qnogo::lab::parse_config(doc);
  if (opt.seed) cfg.seed = opt.seed;
  if (opt.tolerance) cfg.tolerance = opt.tolerance;

  const qnogo::lab::RunReport report = qnogo::lab::run(cfg, opt.workers);

  std::string out_dir = opt.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("QNOGO_OUT_DIR");
    out_dir = env && *env ? env : ".";
  }
  fs::create_directories(out_dir);
  const fs::path report_path = fs::path(out_dir) / (name + "." + opt.format);
  write_file(report_path, opt.format == "csv" ? qnogo::lab::emit_csv(report)
                                              : qnogo::lab::emit_json(report));
  write_file(fs::path(out_dir) / (name + ".timings.json"), qnogo::lab::emit_timings(report));

  for (const qnogo::lab::Check& c : report.checks) {
    std::printf("%s  %-32s measured=%.6g tolerance=%.6g\n", c.pass ? "PASS" : "FAIL",
                c.id.c_str(), c.measured, c.tolerance);
  }
  std::printf("report: %s\n", report_path.string().c_str());
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnogo: numerical laboratory for quantum no-go constructions"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  for (const std::string& name : qnogo::lab::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opt.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed (unsigned 64-bit)");
    sub->add_option("--out", opt.out_dir, "output directory (default: $QNOGO_OUT_DIR or .)");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance", tolerance, "override for exact-arithmetic check tolerances")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed") > 0) opt.seed = seed;
  if (chosen->count("--tolerance") > 0) opt.tolerance = tolerance;
  try {
    return run_experiment(chosen->get_name(), opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qnogo: %s\n", e.what());
    return 2;
  }
}
