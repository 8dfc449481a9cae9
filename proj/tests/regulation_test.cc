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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "platreg/adoption.h"
#include "platreg/graph.h"
#include "platreg/regulation.h"

namespace platreg {
namespace {

// Brute force over the last user K who moves on a line with b_B = 0: user K
// follows user K - 1 iff beta <= F(K), so U*_B is the best of
// (mu + (1 - mu) F(K)) sum_{k <= K} p^k.
double LineOracle(int n, double mu, double c, double p, double gap) {
  double best = 0.0;
  for (int K = 0; K < n; ++K) {
    const double pk = std::pow(p, K);
    const double f = (mu * (1 - c) * pk - gap) / ((1 - mu) * c * pk);
    if (f < 0) continue;
    best = std::max(best, (mu + (1 - mu) * f) * (1 - std::pow(p, K + 1)) / (1 - p));
  }
  return best;
}

ModelParams Defaults() {
  ModelParams params;
  params.b_A = 0.01;
  params.b_B = 0.0;
  return params;
}

TEST_CASE("utility on A") {
  ModelParams params = Defaults();
  CHECK(UtilityOnA(GenerateLinear(400), params, 0.0) == doctest::Approx(2.0).epsilon(1e-9));
  params.p = 0.5;
  CHECK(UtilityOnA(GenerateStarChain(2, 2), params, 0.0) == doctest::Approx(0.45));
  CHECK(UtilityOnA(GenerateStarChain(2, 2), params, 0.9) == 0.0);
}

TEST_CASE("optimal B on a long line matches the brute-force oracle") {
  const ModelParams params = Defaults();
  const SenderDecision d = OptimalB(GenerateLinear(200), params);
  CHECK(d.platform == Platform::kB);
  CHECK(std::abs(d.utility - LineOracle(200, 0.2, 0.3, 0.9, 0.01)) < 1e-3);
}

TEST_CASE("optimal B degenerate cases") {
  ModelParams params = Defaults();
  params.b_A = 5.0;
  const SenderDecision none = OptimalB(GenerateLinear(10), params);
  CHECK(none.utility == 0.0);
  CHECK(none.beta_star == 0.0);

  params.b_A = 0.0;
  const SenderDecision one = OptimalB(GenerateLinear(1), params);
  const double bp = TrustThreshold(0.2, 0.3);
  CHECK(one.utility == doctest::Approx(0.2 + 0.8 * bp).epsilon(1e-8));
  CHECK(one.beta_star == doctest::Approx(bp).epsilon(1e-8));
}

TEST_CASE("regulation trichotomy on small lines") {
  ModelParams params = Defaults();
  params.b_A = 0.2;
  const RegulationResult any = StrictestEffectiveRegulation(GenerateLinear(20), params);
  CHECK(any.kind == RegulationKind::kAny);
  REQUIRE(any.rho_se);
  CHECK(*any.rho_se == 0.0);

  params.b_A = 0.0;
  const RegulationResult none = StrictestEffectiveRegulation(GenerateLinear(10), params);
  CHECK(none.kind == RegulationKind::kNoEffective);
  CHECK_FALSE(none.rho_se);

  params.b_A = 0.01;
  const Network line = GenerateLinear(60);
  const RegulationResult mod = StrictestEffectiveRegulation(line, params);
  REQUIRE(mod.kind == RegulationKind::kModerate);
  REQUIRE(mod.rho_se);
  CHECK(*mod.rho_se > 0.0);
  CHECK(*mod.rho_se < mod.beta_free);
  // The strictest effective cap leaves the sender indifferent.
  CHECK(std::abs(UtilityOnA(line, params, *mod.rho_se) - mod.u_star_b) < 1e-9);
}

TEST_CASE("no social quality means no effective regulation on connected graphs") {
  // At beta' every reachable user weakly gains from following the sender.
  ModelParams params = Defaults();
  params.b_A = params.b_B = 0.0;
  for (int n : {2, 5, 10, 50}) {
    CHECK(StrictestEffectiveRegulation(GenerateLinear(n), params).kind ==
          RegulationKind::kNoEffective);
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    SbmSpec spec = CompleteCommunitySbm({6, 7}, 0.9, 3.0);
    spec.seed = rng();
    const Network net = GenerateSbm(spec);
    const std::vector<int> dist = SenderDistances(
        net, Assignment::AllOn(net.n_users(), Platform::kB, Platform::kB));
    if (std::find(dist.begin(), dist.end(), -1) != dist.end()) continue;
    CHECK(StrictestEffectiveRegulation(net, params).kind == RegulationKind::kNoEffective);
  }
}

TEST_CASE("equal positive social quality still taxes the first mover") {
  // User 0 gives up its friend on A, so nobody moves at beta'.
  ModelParams params = Defaults();
  params.b_A = params.b_B = 0.02;
  CHECK(StrictestEffectiveRegulation(GenerateLinear(10), params).kind ==
        RegulationKind::kModerate);
}

TEST_CASE("bisection agrees with the dense grid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 15; ++t) {
    SbmSpec spec = CommunityChainSbm({8, 8, 8}, {0.75, 0.75, 0.75}, 3.0);
    spec.seed = rng();
    std::vector<double> c;
    for (int i = 0; i < 24; ++i) c.push_back(0.22 + 0.26 * u(rng));
    const Network net = GenerateSbm(spec).WithPayoffs(c);
    ModelParams params;
    params.p = 0.4 + 0.5 * u(rng);
    params.b_A = 0.01 * u(rng);
    const SenderDecision bis = OptimalB(net, params, BetaSearch::kBisection);
    const SenderDecision grid = OptimalB(net, params, BetaSearch::kGrid);
    // The grid can only miss a peak by one step of slope at most
    // (1 - mu) * sum p.
    CHECK(bis.utility >= grid.utility - 1e-12);
    CHECK(bis.utility - grid.utility <= kGridStep * net.n_users() + 1e-12);
  }
}

TEST_CASE("property: adopter set is constant between breakpoints") {
  const ModelParams params = Defaults();
  for (const Network& net :
       {GenerateLinear(30), GenerateStarChain(4, 3), GenerateRegularTree(2, 4)}) {
    const auto breaks = AdopterBreakpoints(net, params);
    AdoptionSolver solver(net, params);
    auto count = [&](double beta) {
      const auto r = solver.Run(beta);
      return static_cast<int>(std::count(r.on_b.begin(), r.on_b.end(), 1));
    };
    double prev = 0.0;
    for (const AdopterBreak& b : breaks) {
      CHECK(b.hi - b.lo <= kBisectionWidth * 1.0000001);
      CHECK(b.n_lo > b.n_hi);
      CHECK(count(b.lo) == b.n_lo);
      CHECK(count(b.hi) == b.n_hi);
      if (b.lo > prev) CHECK(count(0.5 * (prev + b.lo)) == b.n_lo);
      prev = b.hi;
    }
  }
}

TEST_CASE("property: regulation monotone in social quality") {
  const Network line = GenerateLinear(40);
  ModelParams params = Defaults();
  double prev_rho = -1.0;
  for (double b = 0.001; b < 0.15; b += 0.004) {
    params.b_A = b;
    const RegulationResult r = StrictestEffectiveRegulation(line, params);
    // A stronger incumbent can enforce a stricter cap.
    const double rho = r.rho_se ? *r.rho_se : 2.0;
    if (prev_rho >= 0.0) CHECK(rho <= prev_rho + 1e-9);
    prev_rho = rho;
  }
  params.b_A = 0.03;
  double prev_u = 0.0;
  for (double bb = 0.0; bb < 0.03; bb += 0.003) {
    params.b_B = bb;
    // A better entrant only attracts more users.
    const double u = OptimalB(line, params).utility;
    CHECK(u >= prev_u - 1e-12);
    prev_u = u;
  }
}

TEST_CASE("sender equilibrium") {
  ModelParams params = Defaults();
  const Network line = GenerateLinear(60);
  params.rho_A = 1.0;
  const SenderDecision free = SenderEquilibrium(line, params);
  CHECK(free.platform == Platform::kA);
  CHECK(free.beta_star == doctest::Approx(TrustThreshold(0.2, 0.3)));

  params.b_A = 0.2;
  params.rho_A = 0.0;
  const SenderDecision capped = SenderEquilibrium(line, params);
  CHECK(capped.platform == Platform::kA);
  CHECK(capped.beta_star == 0.0);

  params.b_A = 0.01;
  const RegulationResult r = StrictestEffectiveRegulation(line, params);
  REQUIRE(r.rho_se);
  params.rho_A = 0.5 * *r.rho_se;
  const SenderDecision moved = SenderEquilibrium(line, params);
  CHECK(moved.platform == Platform::kB);
  CHECK(moved.utility == doctest::Approx(r.u_star_b));
}

}  // namespace
}  // namespace platreg
