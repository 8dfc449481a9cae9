// Copyright 2026 The Platreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLATREG_REGULATION_H_
#define PLATREG_REGULATION_H_

#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "platreg/graph.h"
#include "platreg/model.h"

namespace platreg {

struct SenderDecision {
  Platform platform = Platform::kA;
  double beta_star = 0.0;
  double utility = 0.0;
};

enum class RegulationKind { kNoEffective, kAny, kModerate };

std::string_view RegulationKindName(RegulationKind kind);

struct RegulationResult {
  RegulationKind kind = RegulationKind::kNoEffective;
  // 0 for kAny, the value in (0, beta_free) for kModerate, empty otherwise.
  std::optional<double> rho_se;
  double u_star_b = 0.0;
  double beta_star_b = 0.0;
  double sum_p_A = 0.0;
  // Unconstrained sender optimum on A and its utility.
  double beta_free = 0.0;
  double u_a_free = 0.0;
};

nlohmann::json RegulationToJson(const RegulationResult& result);

enum class BetaSearch {
  kBisection,  // adopter-set bisection with bound pruning
  kGrid,       // dense grid, step 1e-4, for cross-checking
};

inline constexpr double kBisectionWidth = 1e-9;
inline constexpr double kGridStep = 1e-4;

// Sender utility on A with every user on A.
double UtilityOnA(const Network& network, const ModelParams& params, double beta);

// Best beta for the sender on B: the adopter set only shrinks as beta grows,
// so U_B peaks at the right end of a constant-set piece, a trust threshold,
// or the largest threshold.
SenderDecision OptimalB(const Network& network, const ModelParams& params,
                        BetaSearch search = BetaSearch::kBisection);

// One bracket [lo, hi] of width <= kBisectionWidth across which the final
// B-set changes; n_lo > n_hi users end on B at the two ends.
struct AdopterBreak {
  double lo = 0.0;
  double hi = 0.0;
  int n_lo = 0;
  int n_hi = 0;
};

// Every change point of the adopter set on [0, max threshold], found by
// unpruned bisection. Meant for tests and diagnostics.
std::vector<AdopterBreak> AdopterBreakpoints(const Network& network,
                                             const ModelParams& params);

RegulationResult StrictestEffectiveRegulation(
    const Network& network, const ModelParams& params,
    BetaSearch search = BetaSearch::kBisection);

// Full game outcome under params.rho_A: the sender stays on A (ties included)
// when its best admissible utility there reaches U*_B.
SenderDecision SenderEquilibrium(const Network& network, const ModelParams& params,
                                 BetaSearch search = BetaSearch::kBisection);

}  // namespace platreg

#endif  // PLATREG_REGULATION_H_
