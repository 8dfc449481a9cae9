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

#ifndef PLATREG_EXPERIMENTS_H_
#define PLATREG_EXPERIMENTS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platreg/graph.h"
#include "platreg/model.h"
#include "platreg/regulation.h"

namespace platreg {

// Evenly spaced values min + (max - min) i / (steps - 1).
struct Range {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double at(int i) const;
  void Validate(std::string_view name) const;
};

enum class RecipeKind { kLinear, kStarChain, kTree, kSbm };

std::string_view RecipeKindName(RecipeKind kind);
RecipeKind ParseRecipeKind(std::string_view name);

// How to build the network of one sample.
struct NetworkRecipe {
  RecipeKind kind = RecipeKind::kLinear;
  int n = 20;      // linear users
  int n_hubs = 5;  // star chain
  int r = 2;       // star chain, tree
  int depth = 5;   // tree
  SbmSpec sbm;     // seed is replaced per sample
  double c = kDefaultPayoff;
  // Per-user payoffs by user id, last entry repeats (non-SBM recipes).
  std::vector<double> c_by_user;
  // Per-community payoffs (SBM).
  std::vector<double> c_by_community;

  bool random() const { return kind == RecipeKind::kSbm; }
  Network Build(std::uint64_t seed) const;
};

struct SweepSpec {
  Range p{0.1, 0.9, 50};
  Range b_A{0.0, 0.2, 50};
  double mu = 0.2;
  double b_B = 0.0;
  NetworkRecipe recipe;
  int samples = 1;
  std::uint64_t base_seed = 0;
  BetaSearch search = BetaSearch::kBisection;

  void Validate() const;
};

struct SweepOptions {
  int threads = 0;  // 0 picks the hardware concurrency
  // Execute (cell, sample) tasks in a shuffled order; output is unchanged.
  std::optional<std::uint64_t> shuffle_seed;
};

struct HeatmapCell {
  double p = 0.0;
  double b_A = 0.0;
  int samples = 0;
  int n_no_effective = 0;
  int n_any = 0;
  int n_moderate = 0;
  std::optional<double> mean_rho_se;  // over Moderate samples only
  std::uint64_t seed_base = 0;
  // Mean PGM gray level over samples: 0 no effective regulation, 255 any
  // regulation, round(255 (1 - rho_se / beta_free)) otherwise.
  double mean_gray = 0.0;
  std::string error;  // first failure in this cell, empty if none

  bool operator==(const HeatmapCell&) const = default;
};

struct HeatmapGrid {
  int p_steps = 0;
  int b_A_steps = 0;
  // Row-major by (p index, b_A index).
  std::vector<HeatmapCell> cells;

  const HeatmapCell& at(int ip, int ib) const { return cells[ip * b_A_steps + ib]; }
};

HeatmapGrid Sweep(const SweepSpec& spec, const SweepOptions& options = {});

// Per-sample gray level used for the PGM output.
int GrayLevel(const RegulationResult& result);

inline constexpr std::string_view kSweepCsvHeader =
    "p,b_A,samples,n_no_effective,n_any,n_moderate,mean_rho_se,seed_base";

// Shortest text that reads back to the same double.
std::string FormatDouble(double x);

void WriteSweepCsv(const HeatmapGrid& grid, std::ostream& out);
// Reads back what WriteSweepCsv wrote (gray levels and errors are not
// stored and come back as defaults).
std::vector<HeatmapCell> ReadSweepCsv(std::istream& in);
// ASCII P2, one row per b_A value with the largest b_A on top.
void WritePgm(const HeatmapGrid& grid, std::ostream& out);

// Smallest b_A in column `ip` whose AnyRegulation share reaches `fraction`;
// empty if none does.
std::optional<double> AnyBoundary(const HeatmapGrid& grid, int ip,
                                  double fraction = 1.0);

// sum_J min(N(J, A), N(J, B)).
int IrregularChoices(const Network& network, const Assignment& assignment);

struct A1Spec {
  std::vector<double> theta_values{0.75};
  std::vector<int> sizes{30, 30, 30};
  double expected_links = 4.0;
  double mu = 0.2;
  double c = kDefaultPayoff;
  double p = 0.7;
  double b_A = 0.002;
  double b_B = 0.0;
  int samples = 50;
  std::uint64_t base_seed = 0;

  void Validate() const;
};

struct A1Row {
  double theta_jj = 0.0;
  std::uint64_t seed = 0;
  // Empty when any regulation is enforceable and the sender stays on A.
  std::optional<int> n_users_b;
  std::optional<int> irregular;
};

// For every theta_JJ and seed: rho_A = 0 forces the sender to B whenever
// rho_SE > 0; users then adopt at the sender's best beta on B.
std::vector<A1Row> ValidateAssumption1(const A1Spec& spec, int threads = 0);

inline constexpr std::string_view kA1CsvHeader =
    "theta_JJ,seed,n_users_B,irregular_choices";
void WriteA1Csv(const std::vector<A1Row>& rows, std::ostream& out);

// Named desk-scale sweeps: line20, star5, tree5, chain-base, chain-a1,
// chain-a2, complete-small, complete-large. `fast` uses 20x20 cells and at
// most 10 samples.
SweepSpec PresetSweep(std::string_view name, bool fast);
std::vector<std::string> PresetNames();

}  // namespace platreg

#endif  // PLATREG_EXPERIMENTS_H_
