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

#ifndef DDCNET_SURVEY_HPP_
#define DDCNET_SURVEY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddcnet/measures.hpp"
#include "ddcnet/solver.hpp"
#include "ddcnet/states.hpp"

namespace ddcnet {

/// One evaluated state. Re-runnable from (family, params, seed) alone.
///
/// Families and their params: "gw" (alpha, beta), "ws" (a), "gghz" (alpha,
/// mu, M); sampled families "ghz_class", "w_class", "gw4" and "dicke42" carry
/// no params and rebuild their state from the seed.
struct SurveyRecord {
  std::string family;
  std::vector<double> params;
  std::optional<SloccClass> class_label;
  int n_max = 0;
  MeasureReport measures;
  /// Seeds both the state sampler and the solver.
  std::uint64_t seed = 0;
};

/// Rebuilds the state a record describes.
PureState record_state(const SurveyRecord& record);
/// Recomputes n_max for a record with `base` apart from its seed.
int rerun_nmax(const SurveyRecord& record, const SolverConfig& base);

inline constexpr std::string_view kCsvHeader =
    "family,param1,param2,param3,param4,class_label,n_max,ggm,neg_sq_monogamy,"
    "dc_capacity_bits,three_tangle,seed";

std::string to_csv_row(const SurveyRecord& record);
/// Inverse of to_csv_row; throws std::invalid_argument on malformed rows.
SurveyRecord parse_csv_row(std::string_view line);

/// Inclusive (alpha, beta) grid restricted to alpha + beta <= 1.
struct SweepGrid {
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  double alpha_step = 0.02;
  double beta_min = 0.0;
  double beta_max = 1.0;
  double beta_step = 0.02;

  void validate() const;
  /// Grid points in alpha-major order; values are snapped to 1e-12 so that
  /// e.g. 0.02 * 25 lands exactly on 0.5.
  std::vector<std::pair<double, double>> points() const;
};

/// Run-time knobs that never change results.
struct SurveyOptions {
  /// States evaluated concurrently (0 = DDC_THREADS or 1).
  int threads = 0;
  /// When set, records stream to this CSV with a `.manifest.json` beside it.
  std::optional<std::string> csv_path;
  /// Records between checkpoints.
  int checkpoint_every = 500;
  /// Continue from a matching checkpoint left by an interrupted run.
  bool resume = true;
  /// Stop (as if interrupted) after this many records; for tests.
  std::optional<int> stop_after;
};

/// Histogram of n_max over a batch.
struct PercentageTable {
  int count = 0;
  std::map<int, int> histogram;

  double percent(int n_max) const;
  double percent_above(int n_max) const;
};

PercentageTable tabulate(const std::vector<SurveyRecord>& records);

std::vector<SurveyRecord> sweep_gw(const SweepGrid& grid, const SolverConfig& cfg,
                                   const SurveyOptions& opts = {});

std::vector<SurveyRecord> class_survey(SloccClass cls, int count,
                                       const SolverConfig& cfg,
                                       const SurveyOptions& opts = {});

std::vector<SurveyRecord> ws_scan(const std::vector<double>& a_values,
                                  const SolverConfig& cfg,
                                  const SurveyOptions& opts = {});

enum class FourQubitFamily { kGw4, kDicke42 };

std::vector<SurveyRecord> survey_4qubit(FourQubitFamily family, int count,
                                        const SolverConfig& cfg,
                                        const SurveyOptions& opts = {});

/// Thrown when SurveyOptions::stop_after cuts a run short.
class SurveyInterrupted : public std::runtime_error {
 public:
  explicit SurveyInterrupted(int completed);
  int completed() const { return completed_; }

 private:
  int completed_;
};

}  // namespace ddcnet

#endif  // DDCNET_SURVEY_HPP_
