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

#include "platreg/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "platreg/adoption.h"

namespace platreg {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParamsError(what);
}

// Runs fn(task) for every task id, in `order`, on `threads` workers.
void ParallelFor(const std::vector<std::size_t>& order, int threads,
                 const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, std::max<std::size_t>(order.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) fn(order[k]);
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

std::vector<std::size_t> TaskOrder(std::size_t n, std::optional<std::uint64_t> shuffle) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle) {
    std::mt19937_64 rng(*shuffle);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

std::string DescribeFailure(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e) != nullptr) {
    return std::string("invariant violation: ") + e.what();
  }
  if (dynamic_cast<const InvalidParamsError*>(&e) != nullptr) {
    return std::string("invalid params: ") + e.what();
  }
  return std::string("error: ") + e.what();
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T ParseNumber(const std::string& s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidParamsError("bad CSV number '" + s + "'");
  }
  return value;
}

}  // namespace

double Range::at(int i) const {
  if (steps == 1) return min;
  return min + (max - min) * i / (steps - 1);
}

void Range::Validate(std::string_view name) const {
  Require(steps >= 2, std::string(name) + " range needs at least 2 steps");
  Require(std::isfinite(min) && std::isfinite(max) && min <= max,
          std::string(name) + " range needs min <= max");
}

std::string_view RecipeKindName(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::kLinear:
      return "linear";
    case RecipeKind::kStarChain:
      return "star-chain";
    case RecipeKind::kTree:
      return "tree";
    case RecipeKind::kSbm:
      return "sbm";
  }
  return "unknown";
}

RecipeKind ParseRecipeKind(std::string_view name) {
  for (RecipeKind k : {RecipeKind::kLinear, RecipeKind::kStarChain, RecipeKind::kTree,
                       RecipeKind::kSbm}) {
    if (RecipeKindName(k) == name) return k;
  }
  throw InvalidParamsError("unknown network kind '" + std::string(name) + "'");
}

Network NetworkRecipe::Build(std::uint64_t seed) const {
  Network net = [&] {
    switch (kind) {
      case RecipeKind::kLinear:
        return GenerateLinear(n);
      case RecipeKind::kStarChain:
        return GenerateStarChain(n_hubs, r);
      case RecipeKind::kTree:
        return GenerateRegularTree(r, depth);
      case RecipeKind::kSbm: {
        SbmSpec s = sbm;
        s.seed = seed;
        return GenerateSbm(s);
      }
    }
    throw InvalidParamsError("unknown network kind");
  }();
  std::vector<double> c_vec(net.n_users(), c);
  for (int i = 0; i < net.n_users(); ++i) {
    if (kind == RecipeKind::kSbm) {
      if (!c_by_community.empty()) {
        const int comm = net.profile(i).community;
        Require(comm < static_cast<int>(c_by_community.size()),
                "need one payoff per community");
        c_vec[i] = c_by_community[comm];
      }
    } else if (!c_by_user.empty()) {
      c_vec[i] = c_by_user[std::min<std::size_t>(i, c_by_user.size() - 1)];
    }
  }
  return net.WithPayoffs(std::move(c_vec));
}

void SweepSpec::Validate() const {
  p.Validate("p");
  b_A.Validate("b_A");
  Require(p.min > 0.0 && p.max < 1.0, "p range must lie in (0, 1)");
  Require(b_A.min >= 0.0, "b_A range must be >= 0");
  Require(samples >= 1, "samples must be >= 1");
  ModelParams probe;
  probe.mu = mu;
  probe.p = p.min;
  probe.b_B = b_B;
  probe.Validate();
}

HeatmapGrid Sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.Validate();
  // Deterministic families have a single sample.
  const int samples = spec.recipe.random() ? spec.samples : 1;
  std::vector<Network> networks;
  networks.reserve(samples);
  for (int s = 0; s < samples; ++s) networks.push_back(spec.recipe.Build(spec.base_seed + s));

  const int n_cells = spec.p.steps * spec.b_A.steps;
  const std::size_t n_tasks = static_cast<std::size_t>(n_cells) * samples;
  std::vector<std::optional<RegulationResult>> results(n_tasks);
  std::vector<std::string> errors(n_tasks);

  ParallelFor(TaskOrder(n_tasks, options.shuffle_seed), options.threads,
              [&](std::size_t task) {
                const int cell = static_cast<int>(task / samples);
                const int s = static_cast<int>(task % samples);
                ModelParams params;
                params.mu = spec.mu;
                params.p = spec.p.at(cell / spec.b_A.steps);
                params.b_A = spec.b_A.at(cell % spec.b_A.steps);
                params.b_B = spec.b_B;
                try {
                  results[task] =
                      StrictestEffectiveRegulation(networks[s], params, spec.search);
                } catch (const std::exception& e) {
                  errors[task] = DescribeFailure(e);
                }
              });

  HeatmapGrid grid;
  grid.p_steps = spec.p.steps;
  grid.b_A_steps = spec.b_A.steps;
  grid.cells.resize(n_cells);
  for (int cell = 0; cell < n_cells; ++cell) {
    HeatmapCell& out = grid.cells[cell];
    out.p = spec.p.at(cell / spec.b_A.steps);
    out.b_A = spec.b_A.at(cell % spec.b_A.steps);
    out.samples = samples;
    out.seed_base = spec.base_seed;
    double rho_sum = 0.0;
    double gray_sum = 0.0;
    int ok = 0;
    for (int s = 0; s < samples; ++s) {
      const std::size_t task = static_cast<std::size_t>(cell) * samples + s;
      if (!results[task]) {
        if (out.error.empty()) out.error = errors[task];
        continue;
      }
      const RegulationResult& r = *results[task];
      ++ok;
      gray_sum += GrayLevel(r);
      switch (r.kind) {
        case RegulationKind::kNoEffective:
          ++out.n_no_effective;
          break;
        case RegulationKind::kAny:
          ++out.n_any;
          break;
        case RegulationKind::kModerate:
          ++out.n_moderate;
          rho_sum += *r.rho_se;
          break;
      }
    }
    if (out.n_moderate > 0) out.mean_rho_se = rho_sum / out.n_moderate;
    if (ok > 0) out.mean_gray = gray_sum / ok;
  }
  return grid;
}

int GrayLevel(const RegulationResult& result) {
  switch (result.kind) {
    case RegulationKind::kNoEffective:
      return 0;
    case RegulationKind::kAny:
      return 255;
    case RegulationKind::kModerate:
      return static_cast<int>(std::lround(255.0 * (1.0 - *result.rho_se / result.beta_free)));
  }
  return 0;
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void WriteSweepCsv(const HeatmapGrid& grid, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const HeatmapCell& c : grid.cells) {
    out << FormatDouble(c.p) << ',' << FormatDouble(c.b_A) << ',' << c.samples << ','
        << c.n_no_effective << ',' << c.n_any << ',' << c.n_moderate << ','
        << (c.mean_rho_se ? FormatDouble(*c.mean_rho_se) : std::string()) << ','
        << c.seed_base << '\n';
  }
}

std::vector<HeatmapCell> ReadSweepCsv(std::istream& in) {
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)) && line == kSweepCsvHeader,
          "missing sweep CSV header");
  std::vector<HeatmapCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    Require(f.size() == 8, "sweep CSV rows have 8 fields");
    HeatmapCell c;
    c.p = ParseNumber<double>(f[0]);
    c.b_A = ParseNumber<double>(f[1]);
    c.samples = ParseNumber<int>(f[2]);
    c.n_no_effective = ParseNumber<int>(f[3]);
    c.n_any = ParseNumber<int>(f[4]);
    c.n_moderate = ParseNumber<int>(f[5]);
    if (!f[6].empty()) c.mean_rho_se = ParseNumber<double>(f[6]);
    c.seed_base = ParseNumber<std::uint64_t>(f[7]);
    cells.push_back(c);
  }
  return cells;
}

void WritePgm(const HeatmapGrid& grid, std::ostream& out) {
  out << "P2\n" << grid.p_steps << ' ' << grid.b_A_steps << "\n255\n";
  for (int ib = grid.b_A_steps - 1; ib >= 0; --ib) {
    for (int ip = 0; ip < grid.p_steps; ++ip) {
      if (ip > 0) out << ' ';
      out << std::lround(grid.at(ip, ib).mean_gray);
    }
    out << '\n';
  }
}

std::optional<double> AnyBoundary(const HeatmapGrid& grid, int ip, double fraction) {
  for (int ib = 0; ib < grid.b_A_steps; ++ib) {
    const HeatmapCell& c = grid.at(ip, ib);
    if (c.samples > 0 && c.n_any >= fraction * c.samples - 1e-9) return c.b_A;
  }
  return std::nullopt;
}

int IrregularChoices(const Network& network, const Assignment& assignment) {
  const int m = std::max(network.n_communities(), 1);
  std::vector<int> on_a(m, 0);
  std::vector<int> on_b(m, 0);
  for (int i = 0; i < network.n_users(); ++i) {
    const int comm = network.profile(i).community;
    (assignment.platforms[i] == Platform::kA ? on_a : on_b)[comm]++;
  }
  int total = 0;
  for (int j = 0; j < m; ++j) total += std::min(on_a[j], on_b[j]);
  return total;
}

void A1Spec::Validate() const {
  Require(!theta_values.empty(), "need at least one theta_JJ value");
  for (double t : theta_values) Require(t >= 0.0 && t <= 1.0, "theta_JJ must lie in [0, 1]");
  Require(samples >= 1, "samples must be >= 1");
  ModelParams probe;
  probe.mu = mu;
  probe.p = p;
  probe.b_A = b_A;
  probe.b_B = b_B;
  probe.Validate();
}

std::vector<A1Row> ValidateAssumption1(const A1Spec& spec, int threads) {
  spec.Validate();
  const std::size_t n_rows = spec.theta_values.size() * spec.samples;
  std::vector<A1Row> rows(n_rows);
  std::vector<std::string> errors(n_rows);
  ParallelFor(TaskOrder(n_rows, std::nullopt), threads, [&](std::size_t k) {
    A1Row& row = rows[k];
    row.theta_jj = spec.theta_values[k / spec.samples];
    row.seed = spec.base_seed + k % spec.samples;
    try {
      SbmSpec sbm = CommunityChainSbm(
          spec.sizes, std::vector<double>(spec.sizes.size(), row.theta_jj),
          spec.expected_links);
      sbm.seed = row.seed;
      const Network base = GenerateSbm(sbm);
      const Network net =
          base.WithPayoffs(std::vector<double>(base.n_users(), spec.c));
      ModelParams params;
      params.mu = spec.mu;
      params.p = spec.p;
      params.b_A = spec.b_A;
      params.b_B = spec.b_B;
      params.rho_A = 0.0;
      const RegulationResult reg = StrictestEffectiveRegulation(net, params);
      if (reg.kind == RegulationKind::kAny) return;
      const EquilibriumOutcome eq =
          RunAdoption(net, params, reg.beta_star_b, Platform::kB, false);
      row.n_users_b = eq.assignment.CountOn(Platform::kB);
      row.irregular = IrregularChoices(net, eq.assignment);
    } catch (const std::exception& e) {
      errors[k] = DescribeFailure(e);
    }
  });
  for (const std::string& e : errors) {
    if (e.rfind("invariant", 0) == 0) throw InvariantViolation(e);
    if (!e.empty()) throw InvalidParamsError(e);
  }
  return rows;
}

void WriteA1Csv(const std::vector<A1Row>& rows, std::ostream& out) {
  out << kA1CsvHeader << '\n';
  for (const A1Row& r : rows) {
    out << FormatDouble(r.theta_jj) << ',' << r.seed << ','
        << (r.n_users_b ? std::to_string(*r.n_users_b) : std::string()) << ','
        << (r.irregular ? std::to_string(*r.irregular) : std::string()) << '\n';
  }
}

std::vector<std::string> PresetNames() {
  return {"line20",   "star5",    "tree5",          "chain-base",
          "chain-a1", "chain-a2", "complete-small", "complete-large"};
}

SweepSpec PresetSweep(std::string_view name, bool fast) {
  SweepSpec spec;
  const int steps = fast ? 20 : 50;
  spec.p = {0.1, 0.9, steps};
  spec.b_A = {0.0, 0.2, steps};
  spec.samples = 1;
  NetworkRecipe& rec = spec.recipe;
  if (name == "line20") {
    rec.kind = RecipeKind::kLinear;
    rec.n = 20;
    return spec;
  }
  if (name == "star5") {
    rec.kind = RecipeKind::kStarChain;
    rec.n_hubs = 5;
    rec.r = 2;
    return spec;
  }
  if (name == "tree5") {
    rec.kind = RecipeKind::kTree;
    rec.r = 2;
    rec.depth = 5;
    return spec;
  }
  rec.kind = RecipeKind::kSbm;
  spec.b_A = {0.0, 0.02, steps};
  spec.samples = fast ? 10 : 50;
  if (name == "chain-base") {
    rec.sbm = CommunityChainSbm({30, 30, 30}, {0.75, 0.75, 0.75});
  } else if (name == "chain-a1") {
    rec.sbm = CommunityChainSbm({30, 30, 30}, {0.75, 0.5, 0.75});
  } else if (name == "chain-a2") {
    rec.sbm = CommunityChainSbm({30, 30, 30}, {0.75, 1.0, 0.75});
  } else if (name == "complete-small") {
    rec.sbm = CompleteCommunitySbm({20, 30, 40, 50});
  } else if (name == "complete-large") {
    rec.sbm = CompleteCommunitySbm({50, 20, 30, 40});
  } else {
    throw InvalidParamsError("unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace platreg
