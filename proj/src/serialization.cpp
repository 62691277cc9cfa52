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

#include "ddcnet/serialization.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace ddcnet {
namespace {

using nlohmann::json;

// nlohmann's own number output is shortest-round-trip; the files promise a
// fixed 17 digits, so floats are emitted here and everything else delegated.
void emit(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        emit(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

json shape_json(const SystemShape& s) {
  return {{"num_senders", s.num_senders}, {"local_dim", s.local_dim}};
}

json encodings_json(const EncodingSet& set) {
  json all = json::array();
  for (const auto& enc : set.encodings()) {
    json row = json::array();
    for (const auto& p : enc.per_sender) {
      row.push_back({{"theta", p.theta}, {"x", p.x}, {"y", p.y}});
    }
    all.push_back(std::move(row));
  }
  return all;
}

json label_json(const StateLabel& label) {
  return {{"family", label.family}, {"params", label.params}};
}

json state_json(const PureState& state) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
    amps.push_back({state.amplitude(i).real(), state.amplitude(i).imag()});
  }
  json j = {{"amplitudes", std::move(amps)}};
  if (state.label()) j["label"] = label_json(*state.label());
  return j;
}

// nlohmann keeps integral-looking numbers as integers; accept both.
double as_real(const json& j) {
  if (!j.is_number()) throw std::invalid_argument("expected a number");
  return j.get<double>();
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  emit(j, out);
  out += '\n';
  return out;
}

std::string to_json(const SolutionDocument& doc) {
  json j = {
      {"shape", shape_json(doc.set.shape())},
      {"N", doc.set.size()},
      {"encodings", encodings_json(doc.set)},
      {"max_abs_overlap", doc.max_abs_overlap},
      {"seed", doc.seed},
  };
  if (doc.state) j["state"] = state_json(*doc.state);
  return dump_json(j);
}

SolutionDocument solution_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SystemShape shape{j.at("shape").at("num_senders").get<int>(),
                      j.at("shape").at("local_dim").get<int>()};
    shape.validate();
    const int n = j.at("N").get<int>();
    const auto& rows = j.at("encodings");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw std::invalid_argument("encodings length differs from N");
    }
    std::vector<ProductEncoding> encs;
    for (const auto& row : rows) {
      ProductEncoding enc;
      for (const auto& p : row) {
        enc.per_sender.push_back(
            {as_real(p.at("theta")), as_real(p.at("x")), as_real(p.at("y"))});
      }
      encs.push_back(std::move(enc));
    }
    SolutionDocument doc{EncodingSet(shape, std::move(encs)),
                         as_real(j.at("max_abs_overlap")),
                         j.at("seed").get<std::uint64_t>(), std::nullopt};
    if (j.contains("state")) {
      const auto& s = j.at("state");
      Eigen::VectorXcd amps(s.at("amplitudes").size());
      for (std::size_t i = 0; i < s.at("amplitudes").size(); ++i) {
        const auto& a = s.at("amplitudes")[i];
        amps(static_cast<Eigen::Index>(i)) = {as_real(a.at(0)), as_real(a.at(1))};
      }
      std::optional<StateLabel> label;
      if (s.contains("label")) {
        label = StateLabel{s.at("label").at("family").get<std::string>(),
                           s.at("label").at("params").get<std::vector<double>>()};
      }
      doc.state = PureState(shape, std::move(amps), std::move(label));
    }
    return doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("solution JSON: {}", e.what()));
  }
}

std::string to_json(const DdcResult& result, const std::optional<StateLabel>& label) {
  json evidence = json::array();
  for (const auto& [n, r] : result.per_n_evidence) {
    json e = {
        {"N", n},
        {"status", to_string(r.status)},
        {"best_residual", r.best_residual},
        {"restarts_used", r.restarts_used},
    };
    if (r.solution) e["encodings"] = encodings_json(*r.solution);
    evidence.push_back(std::move(e));
  }
  json j = {
      {"shape", shape_json(result.shape)},
      {"n_max", result.n_max},
      {"seed", result.seed},
      {"evidence", std::move(evidence)},
  };
  if (label) j["state"] = label_json(*label);
  return dump_json(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, std::string_view text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.flush()) throw std::runtime_error(fmt::format("write failed: {}", tmp));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ddcnet
