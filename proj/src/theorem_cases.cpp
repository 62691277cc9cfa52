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

#include "ddcnet/theorem_cases.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ddcnet {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr std::uint64_t kPhaseSearchTag = 0x7ab1e;
constexpr std::uint64_t kExtendSearchTag = 0x7ab1e + 1;

AngleTable two_sender_case(int id, const FreeAngles& f) {
  const double t = f.u1;
  switch (id) {
    case 2:
      return {"two-sender case 2 (two C1)", 2,
              {{kHalfPi, t}, {kHalfPi, t + kHalfPi}}, false};
    case 4:
      return {"two-sender case 4 (two C1, one C2)", 2,
              {{kHalfPi, t}, {kHalfPi, t + kHalfPi}, {0.0, kHalfPi}}, true};
    case 5:
      return {"two-sender case 5 (one per class)", 2,
              {{kHalfPi, 0.0}, {0.0, kHalfPi}, {kHalfPi, kHalfPi}}, true};
    default:
      break;
  }
  throw std::invalid_argument(fmt::format("no two-sender gGHZ case {}", id));
}

std::vector<AngleTable> three_sender_case(int id, const FreeAngles& f) {
  const double u1 = f.u1;
  const double u2 = f.u2;
  const double u3 = f.u3;
  const double v1 = f.v1;
  const double h = kHalfPi;
  switch (id) {
    case 1:
      return {{"three-sender case 1 (four C1)", 3,
               {{u1, u2, h}, {u1 - h, u2, h}, {u1, u2 - h, h}, {u1 - h, u2 - h, h}},
               false}};
    case 2:
      return {{"three-sender case 2 (two C4)", 3, {{u1, h, h}, {u1 - h, h, h}}, false}};
    case 3:
      return {{"three-sender case 3 (seven from G1)", 3,
               {{u1, u2, h},
                {u1 - h, u2, h},
                {u1, u2 - h, h},
                {u1 - h, u2 - h, h},
                {v1, h, 0.0},
                {v1 - h, h, 0.0},
                {h, 0.0, 0.0}},
               true}};
    case 4:
      return {{"three-sender case 4 (six G1, one G2)", 3,
               {{u1, u2, h},
                {u1 - h, u2, h},
                {u1, u2 - h, h},
                {u1 - h, u2 - h, h},
                {0.0, h, 0.0},
                {h, 0.0, 0.0},
                {h, h, 0.0}},
               true}};
    case 5:
      return {{"three-sender case 5 (five G1, one G2, one G3)", 3,
               {{u1, 0.0, h},
                {u1 - h, 0.0, h},
                {0.0, h, u3},
                {0.0, h, u3 - h},
                {h, 0.0, 0.0},
                // The G2 member is taken from class C6; a C4 member with
                // theta^{S1} = 0 cannot be orthogonal to both C2 rows.
                {h, h, 0.0},
                {h, h, h}},
               true}};
    case 6:
      return {{"three-sender case 6 (four G1, partial)", 3,
               {{u1, u2, h}, {u1 - h, u2, h}, {0.0, h, 0.0}, {h, 0.0, 0.0}},
               false},
              {"three-sender case 6 (four G1, two G2, one G3)", 3,
               {{u1, 0.0, h},
                {u1 - h, 0.0, h},
                {0.0, h, 0.0},
                {h, 0.0, 0.0},
                {0.0, h, h},
                {h, h, 0.0},
                {h, h, h}},
               true}};
    case 7:
      return {{"three-sender case 7 (three G1, four G2)", 3,
               {{0.0, 0.0, h},
                {0.0, h, 0.0},
                {h, 0.0, 0.0},
                {u1, h, h},
                {u1 - h, h, h},
                {h, 0.0, h},
                {h, h, 0.0}},
               true}};
    case 8:
      return {{"three-sender case 8 (one per class)", 3,
               {{0.0, 0.0, h},
                {0.0, h, 0.0},
                {h, 0.0, 0.0},
                {0.0, h, h},
                {h, 0.0, h},
                {h, h, 0.0},
                {h, h, h}},
               true}};
    default:
      break;
  }
  throw std::invalid_argument(fmt::format("no three-sender gGHZ case {}", id));
}

}  // namespace

std::vector<AngleTable> gghz_theorem_families(int num_senders, int case_id,
                                              const FreeAngles& free) {
  if (num_senders == 2) return {two_sender_case(case_id, free)};
  if (num_senders == 3) return three_sender_case(case_id, free);
  throw std::invalid_argument(
      fmt::format("gGHZ case tables exist for 2 or 3 senders, not {}", num_senders));
}

std::vector<int> gghz_theorem_case_ids(int num_senders) {
  if (num_senders == 2) return {2, 4, 5};
  if (num_senders == 3) return {1, 2, 3, 4, 5, 6, 7, 8};
  return {};
}

SearchTemplate phase_template(const AngleTable& table, int extra_free) {
  const int m = table.num_senders;
  SearchTemplate t;
  t.shape = SystemShape{m, 2};
  t.start.push_back(ProductEncoding::identity(m));
  t.free.assign(m, {false, false, false});
  for (const std::vector<double>& row : table.thetas) {
    if (static_cast<int>(row.size()) != m) {
      throw std::invalid_argument("angle table row has the wrong sender count");
    }
    ProductEncoding e = ProductEncoding::identity(m);
    for (int k = 0; k < m; ++k) {
      e.per_sender[k].theta = row[k];
      t.free.push_back({false, true, true});
    }
    t.start.push_back(std::move(e));
  }
  for (int i = 0; i < extra_free; ++i) {
    t.start.push_back(ProductEncoding::identity(m));
    for (int k = 0; k < m; ++k) t.free.push_back({true, true, true});
  }
  return t;
}

FeasibilityResult solve_table_phases(const DensityMatrix& rho,
                                     const AngleTable& table,
                                     const SolverConfig& cfg) {
  return solve_template(rho, phase_template(table), cfg, kPhaseSearchTag);
}

FeasibilityResult extend_table(const DensityMatrix& rho, const AngleTable& table,
                               const SolverConfig& cfg) {
  return solve_template(rho, phase_template(table, 1), cfg, kExtendSearchTag);
}

}  // namespace ddcnet
