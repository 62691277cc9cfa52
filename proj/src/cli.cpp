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

#include "ddcnet/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "ddcnet/measures.hpp"
#include "ddcnet/parallel.hpp"
#include "ddcnet/protocol.hpp"
#include "ddcnet/rng.hpp"
#include "ddcnet/serialization.hpp"
#include "ddcnet/solver.hpp"
#include "ddcnet/survey.hpp"

namespace ddcnet {
namespace {

using nlohmann::json;

// Raised for semantically bad flag combinations; maps to exit 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StateFlags {
  std::string family;
  double alpha = 0.5;
  double beta = 0.25;
  double mu = 0.0;
  double a = 0.0;
  int senders = 2;

  void add(CLI::App* cmd, bool required) {
    auto* f = cmd->add_option("--family", family,
                              "gghz | gw | ws | ghz | w | dicke42 (symmetric)");
    f->check(CLI::IsMember({"gghz", "gw", "ws", "ghz", "w", "dicke42"}));
    if (required) f->required();
    cmd->add_option("--alpha", alpha, "gGHZ / gW alpha")->capture_default_str();
    cmd->add_option("--beta", beta, "gW beta")->capture_default_str();
    cmd->add_option("--mu", mu, "gGHZ relative phase")->capture_default_str();
    cmd->add_option("--a", a, "W_s admixture")->capture_default_str();
    cmd->add_option("--senders", senders, "senders for gghz / ghz")->capture_default_str();
  }

  PureState build() const {
    if (family == "gghz") return make_gghz(senders, alpha, mu);
    if (family == "ghz") return make_gghz(senders, 0.5, 0.0);
    if (family == "gw") return make_gw(alpha, beta);
    if (family == "w") return make_gw(1.0 / 3.0, 1.0 / 3.0);
    if (family == "ws") return make_ws(a);
    if (family == "dicke42") {
      const std::vector<Complex> eq(6, Complex(1.0, 0.0));
      return make_dicke4(2, eq);
    }
    throw UsageError("--family is required");
  }
};

struct SolverFlags {
  SolverConfig cfg;
  std::optional<std::uint64_t> seed;
  int threads = 0;

  void add(CLI::App* cmd, bool seed_required) {
    cmd->add_option("--tol", cfg.tolerance, "overlap tolerance")->capture_default_str();
    cmd->add_option("--restarts", cfg.restarts, "random restarts per N")
        ->capture_default_str();
    cmd->add_option("--max-iter", cfg.max_iterations, "iterations per restart")
        ->capture_default_str();
    auto* s = cmd->add_option("--seed", seed, "random seed");
    if (seed_required) s->required();
    cmd->add_option("--threads", threads, "worker threads (default: DDC_THREADS or 1)");
  }

  SolverConfig resolved() const {
    SolverConfig c = cfg;
    c.seed = seed.value_or(0);
    c.threads = resolve_threads(threads);
    c.validate();
    return c;
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file_atomic(path, text);
  }
}

SolutionDocument load_solution(const std::string& path) {
  return solution_from_json(read_text_file(path));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad number '{}' in list", item));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void summarize(const PercentageTable& t, int classical, std::ostream& err) {
  fmt::print(err, "{} records; n_max > {}: {:.2f}%\n", t.count, classical,
             t.percent_above(classical));
  for (const auto& [n, c] : t.histogram) {
    fmt::print(err, "  n_max = {:2d}: {:6d} ({:.2f}%)\n", n, c, t.percent(n));
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic dense coding capacity of multiqubit states", "ddcnet"};
  app.require_subcommand(1);

  std::string out_path;
  double verify_tol = 1e-5;

  auto* nmax = app.add_subcommand("nmax", "N_max of one state (DdcResult JSON)");
  StateFlags nmax_state;
  SolverFlags nmax_solver;
  std::string solution_out;
  nmax_state.add(nmax, true);
  nmax_solver.add(nmax, false);
  nmax->add_option("--out", out_path, "write JSON here instead of stdout");
  nmax->add_option("--solution-out", solution_out,
                   "also write the largest orthogonal set, with the state");

  auto* sweep = app.add_subcommand("sweep", "gW (alpha, beta) map to CSV");
  SweepGrid grid;
  SolverFlags sweep_solver;
  int checkpoint_every = 500;
  bool no_resume = false;
  double step = 0.0;
  sweep->add_option("--step", step, "alpha and beta step");
  sweep->add_option("--alpha-min", grid.alpha_min)->capture_default_str();
  sweep->add_option("--alpha-max", grid.alpha_max)->capture_default_str();
  sweep->add_option("--beta-min", grid.beta_min)->capture_default_str();
  sweep->add_option("--beta-max", grid.beta_max)->capture_default_str();
  sweep->add_option("--out", out_path, "CSV path")->required();
  sweep_solver.add(sweep, true);

  auto* survey = app.add_subcommand("survey", "Monte Carlo n_max statistics to CSV");
  std::string survey_class;
  int count = 0;
  SolverFlags survey_solver;
  survey->add_option("--class", survey_class, "ghz | w | gw4 | dicke42")
      ->required()
      ->check(CLI::IsMember({"ghz", "w", "gw4", "dicke42"}));
  survey->add_option("--count", count, "samples")->required()->check(CLI::PositiveNumber);
  survey->add_option("--out", out_path, "CSV path")->required();
  survey_solver.add(survey, true);

  for (auto* cmd : {sweep, survey}) {
    cmd->add_option("--checkpoint-every", checkpoint_every)->capture_default_str();
    cmd->add_flag("--no-resume", no_resume, "ignore an existing checkpoint");
  }

  auto* ws = app.add_subcommand("ws-scan", "n_max of W_s over a list of a values");
  std::string a_list;
  SolverFlags ws_solver;
  ws->add_option("--a", a_list, "comma-separated a values")->required();
  ws->add_option("--out", out_path, "CSV path (default: stdout)");
  ws_solver.add(ws, true);

  auto* verify = app.add_subcommand("verify", "re-check a serialized encoding set");
  std::string solution_path;
  StateFlags verify_state;
  verify->add_option("--solution", solution_path, "solution JSON")->required();
  verify->add_option("--tol", verify_tol)->capture_default_str();
  verify_state.add(verify, false);

  auto* proto = app.add_subcommand("protocol", "run DDC rounds on a solution");
  int message = -1;
  bool all_messages = false;
  proto->add_option("--solution", solution_path, "solution JSON with state")->required();
  auto* msg_opt = proto->add_option("--message", message, "message index");
  proto->add_flag("--all", all_messages, "every message")->excludes(msg_opt);

  auto* meas = app.add_subcommand("measures", "entanglement measures of one state");
  StateFlags meas_state;
  int node = -1;
  meas_state.add(meas, true);
  meas->add_option("--node", node, "monogamy node party (default: receiver)");

  auto* conj = app.add_subcommand("conjecture", "probe N = d^(M+1) - 1 on Haar states");
  int conj_count = 0;
  int conj_senders = 2;
  SolverFlags conj_solver;
  conj->add_option("--count", conj_count)->required()->check(CLI::PositiveNumber);
  conj->add_option("--senders", conj_senders)->capture_default_str();
  conj->add_option("--out", out_path, "JSON path (default: stdout)");
  conj_solver.add(conj, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const auto survey_opts = [&](const SolverFlags& f) {
    SurveyOptions o;
    o.threads = f.resolved().threads;
    o.csv_path = out_path.empty() ? std::nullopt : std::optional(out_path);
    o.checkpoint_every = checkpoint_every;
    o.resume = !no_resume;
    return o;
  };

  try {
    if (*nmax) {
      const PureState state = nmax_state.build();
      const SolverConfig cfg = nmax_solver.resolved();
      const DdcResult result = compute_nmax(state, cfg);
      emit(to_json(result, state.label()), out_path, out);
      fmt::print(err, "n_max = {}\n", result.n_max);
      if (!solution_out.empty()) {
        std::optional<EncodingSet> set = result.per_n_evidence.at(result.n_max).solution;
        if (!set) {
          // The classical limit is not solved during the scan.
          auto r = find_orthogonal_set(reduce_to_senders(state), result.n_max, cfg);
          if (!r.feasible()) {
            fmt::print(err, "no explicit set found at N = {}\n", result.n_max);
            return kExitVerification;
          }
          set = std::move(r.solution);
        }
        const auto check = verify_set(reduce_to_senders(state), *set, cfg.tolerance);
        write_text_file_atomic(
            solution_out, to_json(SolutionDocument{*set, check.max_abs_overlap,
                                                   cfg.seed, state}));
      }
      return kExitOk;
    }
    if (*sweep) {
      if (step > 0) grid.alpha_step = grid.beta_step = step;
      const auto records = sweep_gw(grid, sweep_solver.resolved(), survey_opts(sweep_solver));
      summarize(tabulate(records), 4, err);
      return kExitOk;
    }
    if (*survey) {
      const SolverConfig cfg = survey_solver.resolved();
      const auto opts = survey_opts(survey_solver);
      std::vector<SurveyRecord> records;
      int classical = 4;
      if (survey_class == "ghz" || survey_class == "w") {
        records = class_survey(survey_class == "ghz" ? SloccClass::kGhz : SloccClass::kW,
                               count, cfg, opts);
      } else {
        classical = 8;
        records = survey_4qubit(
            survey_class == "gw4" ? FourQubitFamily::kGw4 : FourQubitFamily::kDicke42,
            count, cfg, opts);
      }
      summarize(tabulate(records), classical, err);
      return kExitOk;
    }
    if (*ws) {
      const auto records =
          ws_scan(parse_list(a_list), ws_solver.resolved(), survey_opts(ws_solver));
      if (out_path.empty()) {
        out << kCsvHeader << '\n';
        for (const auto& r : records) out << to_csv_row(r) << '\n';
      }
      for (const auto& r : records) {
        fmt::print(err, "a = {}: n_max = {}\n", format_real(r.params[0]), r.n_max);
      }
      return kExitOk;
    }
    if (*verify) {
      const SolutionDocument doc = load_solution(solution_path);
      std::optional<PureState> state = doc.state;
      if (!verify_state.family.empty()) state = verify_state.build();
      if (!state) throw UsageError("solution has no state; pass --family and parameters");
      const auto report = verify_set(reduce_to_senders(*state), doc.set, verify_tol);
      out << dump_json({{"N", doc.set.size()},
                        {"max_abs_overlap", report.max_abs_overlap},
                        {"tolerance", verify_tol},
                        {"pass", report.pass}});
      fmt::print(err, "{}: max |overlap| = {:.3e}\n", report.pass ? "PASS" : "FAIL",
                 report.max_abs_overlap);
      return report.pass ? kExitOk : kExitVerification;
    }
    if (*proto) {
      const SolutionDocument doc = load_solution(solution_path);
      if (!doc.state) throw UsageError("protocol needs a solution that carries its state");
      if (!all_messages && message < 0) throw UsageError("pass --message or --all");
      Codebook cb = [&] {
        try {
          return build_codebook(*doc.state, doc.set);
        } catch (const std::invalid_argument& e) {
          throw DecodingError(e.what());
        }
      }();
      if (!all_messages && message >= cb.size()) {
        throw UsageError(fmt::format("--message must be below {}", cb.size()));
      }
      json rounds = json::array();
      const int first = all_messages ? 0 : message;
      const int last = all_messages ? cb.size() - 1 : message;
      bool ok = true;
      for (int m = first; m <= last; ++m) {
        const RoundResult r = run_round(cb, m);
        ok = ok && r.decoded == r.sent;
        rounds.push_back({{"sent", r.sent},
                          {"symbols", cb.symbols(m)},
                          {"decoded", r.decoded},
                          {"margin", r.margin}});
      }
      out << dump_json({{"N", cb.size()}, {"split", cb.split()}, {"rounds", rounds}});
      return ok ? kExitOk : kExitVerification;
    }
    if (*meas) {
      const PureState state = meas_state.build();
      MeasureReport m = compute_measures(state);
      if (node >= 0) m.neg_sq_monogamy = neg_sq_monogamy(state, node);
      out << dump_json({{"ggm", m.ggm},
                        {"neg_sq_monogamy", m.neg_sq_monogamy},
                        {"dc_capacity_bits", m.dc_capacity_bits},
                        {"three_tangle", m.three_tangle}});
      return kExitOk;
    }
    if (*conj) {
      const SolverConfig cfg = conj_solver.resolved();
      const SystemShape shape{conj_senders, 2};
      shape.validate();
      std::vector<PureState> states;
      for (int i = 0; i < conj_count; ++i) {
        states.push_back(sample_haar_state(shape, stream_key(cfg.seed, {static_cast<std::uint64_t>(i)})));
      }
      const ConjectureReport report = corroborate_conjecture(states, cfg);
      json entries = json::array();
      for (const auto& e : report.entries) {
        entries.push_back({{"index", e.index},
                           {"status", to_string(e.at_n.status)},
                           {"best_residual", e.at_n.best_residual},
                           {"finding", to_string(e.finding)}});
      }
      emit(dump_json({{"probed_n", report.probed_n},
                      {"seed", cfg.seed},
                      {"counterexample_candidates", report.counterexample_candidates()},
                      {"subset_of_full_basis", report.subset_of_full_basis()},
                      {"entries", entries}}),
           out_path, out);
      fmt::print(err, "N = {}: {} counterexample candidates among {} states\n",
                 report.probed_n, report.counterexample_candidates(), conj_count);
      return kExitOk;
    }
  } catch (const DecodingError& e) {
    fmt::print(err, "verification failed: {}\n", e.what());
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ddcnet
