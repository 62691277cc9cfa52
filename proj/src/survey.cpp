/* Copyright 2026 The ddcnet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ddcnet/survey.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ddcnet/parallel.hpp"
#include "ddcnet/rng.hpp"
#include "ddcnet/serialization.hpp"

#ifndef DDCNET_GIT_DESCRIBE
#define DDCNET_GIT_DESCRIBE "unknown"
#endif

namespace ddcnet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t record_seed(std::uint64_t seed, int i) {
  return stream_key(seed, {static_cast<std::uint64_t>(i)});
}

double snap(double v) { return std::round(v * 1e12) / 1e12; }

SurveyRecord evaluate(std::string family, std::vector<double> params,
                      std::optional<SloccClass> label, std::uint64_t seed,
                      const SolverConfig& base) {
  SurveyRecord rec{std::move(family), std::move(params), label, 0, {}, seed};
  const PureState state = record_state(rec);
  SolverConfig cfg = base;
  cfg.seed = seed;
  cfg.threads = 1;
  rec.n_max = compute_nmax(state, cfg).n_max;
  rec.measures = compute_measures(state);
  return rec;
}

json config_json(const SolverConfig& cfg) {
  return {
      {"tolerance", cfg.tolerance},
      {"restarts", cfg.restarts},
      {"max_iterations", cfg.max_iterations},
      {"polish_tolerance", cfg.polish_tolerance},
      {"plateau_relative", cfg.plateau_relative},
  };
}

struct Batch {
  std::string kind;
  json extra;
  int count = 0;
  std::function<SurveyRecord(int)> eval;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

void append(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << text;
  if (!out.flush()) throw std::runtime_error(fmt::format("write failed: {}", path));
}

// Evaluates records in chunks; with a CSV path, each finished chunk is
// appended in index order and a checkpoint records how far the file is valid.
std::vector<SurveyRecord> run_batch(const Batch& batch, const SolverConfig& cfg,
                                    const SurveyOptions& opts) {
  cfg.validate();
  if (opts.checkpoint_every < 1) {
    throw std::invalid_argument("checkpoint_every must be >= 1");
  }
  const int threads = resolve_threads(opts.threads);
  std::vector<SurveyRecord> records(batch.count);

  const json job = {{"kind", batch.kind},   {"count", batch.count},
                    {"seed", cfg.seed},     {"config", config_json(cfg)},
                    {"params", batch.extra}};
  std::string partial, checkpoint;
  int start = 0;
  if (opts.csv_path) {
    partial = *opts.csv_path + ".partial";
    checkpoint = *opts.csv_path + ".ckpt";
    bool resumed = false;
    if (opts.resume && fs::exists(checkpoint) && fs::exists(partial)) {
      const json ck = json::parse(read_text_file(checkpoint), nullptr, false);
      if (!ck.is_discarded() && ck.value("job", json()) == job &&
          fs::file_size(partial) >= ck.at("csv_bytes").get<std::uintmax_t>()) {
        fs::resize_file(partial, ck.at("csv_bytes").get<std::uintmax_t>());
        const auto lines = split_lines(read_text_file(partial));
        start = ck.at("completed").get<int>();
        if (static_cast<int>(lines.size()) != start + 1 || lines[0] != kCsvHeader) {
          throw std::runtime_error(fmt::format("corrupt checkpoint {}", checkpoint));
        }
        for (int i = 0; i < start; ++i) records[i] = parse_csv_row(lines[i + 1]);
        resumed = true;
      }
    }
    if (!resumed) write_text_file_atomic(partial, std::string(kCsvHeader) + "\n");
  }

  for (int lo = start; lo < batch.count;) {
    const int hi = std::min(batch.count, lo + opts.checkpoint_every);
    parallel_for(lo, hi, threads, [&](int i) { records[i] = batch.eval(i); });
    if (opts.csv_path) {
      std::string rows;
      for (int i = lo; i < hi; ++i) rows += to_csv_row(records[i]) + "\n";
      append(partial, rows);
      const json ck = {{"job", job}, {"completed", hi},
                       {"csv_bytes", fs::file_size(partial)}};
      write_text_file_atomic(checkpoint, ck.dump() + "\n");
    }
    lo = hi;
    if (opts.stop_after && hi >= *opts.stop_after && hi < batch.count) {
      throw SurveyInterrupted(hi);
    }
  }

  if (opts.csv_path) {
    fs::rename(partial, *opts.csv_path);
    const PercentageTable table = tabulate(records);
    json hist = json::object();
    for (const auto& [n, c] : table.histogram) hist[std::to_string(n)] = c;
    json manifest = job;
    manifest["git_describe"] = DDCNET_GIT_DESCRIBE;
    manifest["counts"] = {{"records", table.count}, {"n_max", hist}};
    write_text_file_atomic(*opts.csv_path + ".manifest.json", dump_json(manifest));
    fs::remove(checkpoint);
  }
  return records;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::size_t pos = 0;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma - pos));
    if (comma == std::string_view::npos) return out;
    pos = comma + 1;
  }
}

double parse_real(std::string_view s) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw std::invalid_argument(fmt::format("bad number '{}'", buf));
  }
  return v;
}

}  // namespace

SurveyInterrupted::SurveyInterrupted(int completed)
    : std::runtime_error(fmt::format("survey stopped after {} records", completed)),
      completed_(completed) {}

PureState record_state(const SurveyRecord& r) {
  const auto param = [&](std::size_t i) {
    if (i >= r.params.size()) {
      throw std::invalid_argument(fmt::format("{} record lacks param {}", r.family, i + 1));
    }
    return r.params[i];
  };
  if (r.family == "gw") return make_gw(param(0), param(1));
  if (r.family == "ws") return make_ws(param(0));
  if (r.family == "gghz") {
    const int m = r.params.size() > 2 ? static_cast<int>(param(2)) : 2;
    return make_gghz(m, param(0), param(1));
  }
  if (r.family == "ghz_class") return sample_class(SloccClass::kGhz, r.seed);
  if (r.family == "w_class") return sample_class(SloccClass::kW, r.seed);
  if (r.family == "gw4") return sample_dicke4(1, r.seed);
  if (r.family == "dicke42") return sample_dicke4(2, r.seed);
  throw std::invalid_argument(fmt::format("unknown family '{}'", r.family));
}

int rerun_nmax(const SurveyRecord& record, const SolverConfig& base) {
  SolverConfig cfg = base;
  cfg.seed = record.seed;
  return compute_nmax(record_state(record), cfg).n_max;
}

std::string to_csv_row(const SurveyRecord& r) {
  if (r.params.size() > 4) throw std::invalid_argument("at most 4 params");
  std::string row = r.family;
  for (std::size_t i = 0; i < 4; ++i) {
    row += ',';
    if (i < r.params.size()) row += format_real(r.params[i]);
  }
  row += ',';
  if (r.class_label) row += to_string(*r.class_label);
  row += fmt::format(",{},{},{},{},{},{}", r.n_max, format_real(r.measures.ggm),
                     format_real(r.measures.neg_sq_monogamy),
                     format_real(r.measures.dc_capacity_bits),
                     format_real(r.measures.three_tangle), r.seed);
  return row;
}

SurveyRecord parse_csv_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != 12) {
    throw std::invalid_argument(fmt::format("CSV row has {} fields, want 12", f.size()));
  }
  SurveyRecord r;
  r.family = std::string(f[0]);
  for (int i = 1; i <= 4 && !f[i].empty(); ++i) r.params.push_back(parse_real(f[i]));
  if (f[5] == "GHZ_CLASS") {
    r.class_label = SloccClass::kGhz;
  } else if (f[5] == "W_CLASS") {
    r.class_label = SloccClass::kW;
  } else if (!f[5].empty()) {
    throw std::invalid_argument(fmt::format("bad class label '{}'", f[5]));
  }
  r.n_max = static_cast<int>(parse_real(f[6]));
  r.measures = {parse_real(f[7]), parse_real(f[8]), parse_real(f[9]), parse_real(f[10])};
  r.seed = std::stoull(std::string(f[11]));
  return r;
}

void SweepGrid::validate() const {
  if (!(alpha_step > 0) || !(beta_step > 0)) {
    throw std::invalid_argument("sweep grid steps must be positive");
  }
  if (alpha_min < 0 || beta_min < 0 || alpha_max > 1 || beta_max > 1 ||
      alpha_min > alpha_max || beta_min > beta_max) {
    throw std::invalid_argument("sweep grid bounds must lie in [0, 1]");
  }
}

std::vector<std::pair<double, double>> SweepGrid::points() const {
  validate();
  std::vector<std::pair<double, double>> out;
  const int na = static_cast<int>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-9));
  const int nb = static_cast<int>(std::floor((beta_max - beta_min) / beta_step + 1e-9));
  for (int i = 0; i <= na; ++i) {
    const double a = snap(alpha_min + i * alpha_step);
    for (int j = 0; j <= nb; ++j) {
      const double b = snap(beta_min + j * beta_step);
      if (a + b <= 1.0 + 1e-12) out.emplace_back(a, b);
    }
  }
  return out;
}

double PercentageTable::percent(int n_max) const {
  if (count == 0) return 0.0;
  const auto it = histogram.find(n_max);
  return it == histogram.end() ? 0.0 : 100.0 * it->second / count;
}

double PercentageTable::percent_above(int n_max) const {
  if (count == 0) return 0.0;
  int above = 0;
  for (const auto& [n, c] : histogram) {
    if (n > n_max) above += c;
  }
  return 100.0 * above / count;
}

PercentageTable tabulate(const std::vector<SurveyRecord>& records) {
  PercentageTable t;
  t.count = static_cast<int>(records.size());
  for (const auto& r : records) ++t.histogram[r.n_max];
  return t;
}

std::vector<SurveyRecord> sweep_gw(const SweepGrid& grid, const SolverConfig& cfg,
                                   const SurveyOptions& opts) {
  const auto pts = grid.points();
  Batch b{"sweep_gw",
          {{"alpha", {grid.alpha_min, grid.alpha_max, grid.alpha_step}},
           {"beta", {grid.beta_min, grid.beta_max, grid.beta_step}}},
          static_cast<int>(pts.size()),
          [&](int i) {
            return evaluate("gw", {pts[i].first, pts[i].second}, std::nullopt,
                            record_seed(cfg.seed, i), cfg);
          }};
  return run_batch(b, cfg, opts);
}

std::vector<SurveyRecord> class_survey(SloccClass cls, int count,
                                       const SolverConfig& cfg,
                                       const SurveyOptions& opts) {
  if (count < 1) throw std::invalid_argument("class_survey: count must be >= 1");
  const std::string family = cls == SloccClass::kGhz ? "ghz_class" : "w_class";
  Batch b{"class_survey", {{"class", to_string(cls)}}, count, [&](int i) {
            return evaluate(family, {}, cls, record_seed(cfg.seed, i), cfg);
          }};
  return run_batch(b, cfg, opts);
}

std::vector<SurveyRecord> ws_scan(const std::vector<double>& a_values,
                                  const SolverConfig& cfg,
                                  const SurveyOptions& opts) {
  for (double a : a_values) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument(fmt::format("ws_scan: a={} outside [0, 1]", a));
    }
  }
  Batch b{"ws_scan", {{"a", a_values}}, static_cast<int>(a_values.size()),
          [&](int i) {
            return evaluate("ws", {a_values[i]}, std::nullopt,
                            record_seed(cfg.seed, i), cfg);
          }};
  return run_batch(b, cfg, opts);
}

std::vector<SurveyRecord> survey_4qubit(FourQubitFamily family, int count,
                                        const SolverConfig& cfg,
                                        const SurveyOptions& opts) {
  if (count < 1) throw std::invalid_argument("survey_4qubit: count must be >= 1");
  const std::string name = family == FourQubitFamily::kGw4 ? "gw4" : "dicke42";
  Batch b{"survey_4qubit", {{"family", name}}, count, [&](int i) {
            return evaluate(name, {}, std::nullopt, record_seed(cfg.seed, i), cfg);
          }};
  return run_batch(b, cfg, opts);
}

}  // namespace ddcnet
