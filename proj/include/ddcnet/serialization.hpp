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

#ifndef DDCNET_SERIALIZATION_HPP_
#define DDCNET_SERIALIZATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "ddcnet/encoders.hpp"
#include "ddcnet/solver.hpp"
#include "ddcnet/states.hpp"

namespace ddcnet {

/// Shortest text that parses back to the same double: 17 significant digits.
/// Non-finite values print as "nan", "inf" or "-inf".
std::string format_real(double v);

/// Compact JSON, newline-terminated, with every float via format_real.
std::string dump_json(const nlohmann::json& j);

/// A serialized encoding set, optionally carrying the state it was solved on.
struct SolutionDocument {
  EncodingSet set;
  double max_abs_overlap = 0.0;
  std::uint64_t seed = 0;
  std::optional<PureState> state;
};

std::string to_json(const SolutionDocument& doc);
/// Throws std::invalid_argument on malformed input.
SolutionDocument solution_from_json(std::string_view text);

/// DdcResult with per-N evidence; `label` describes the state if known.
std::string to_json(const DdcResult& result,
                    const std::optional<StateLabel>& label = std::nullopt);

std::string read_text_file(const std::string& path);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_text_file_atomic(const std::string& path, std::string_view text);

}  // namespace ddcnet

#endif  // DDCNET_SERIALIZATION_HPP_
