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

#include <cmath>
#include <random>
#include <vector>

#include "platreg/model.h"

namespace platreg {
namespace {

// Plays the signaling game directly: nature draws w, the sender reports
// s = 1 when w = 1 and lies with probability beta otherwise, the signal
// arrives with probability p_recv and a Bayesian user picks the action
// with the larger posterior payoff.
double SimulatedNewsPayoff(double mu, double c, double beta, double p_recv,
                           int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double post_if_one = mu / (mu + (1 - mu) * beta);
  const int act_on_one = post_if_one * (1 - c) >= (1 - post_if_one) * c ? 1 : 0;
  // With no signal the prior (mu < c) favors a = 0, and s = 0 reveals w = 0.
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    const int w = u(rng) < mu ? 1 : 0;
    const int s = w == 1 ? 1 : (u(rng) < beta ? 1 : 0);
    const bool received = u(rng) < p_recv;
    int a = 0;
    if (received && s == 1) a = act_on_one;
    if (a == 1 && w == 1) total += 1 - c;
    if (a == 0 && w == 0) total += c;
  }
  return total / draws;
}

TEST_CASE("trust threshold") {
  CHECK(TrustThreshold(0.2, 0.3) == doctest::Approx(0.5833333333333).epsilon(1e-12));
  CHECK(TrustThreshold(0.2, 0.5 - 1e-9) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(TrustThreshold(0.2, 0.2 + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("news payoff examples") {
  CHECK(NewsPayoff(0.2, 0.3, 0.5, 0.0) == doctest::Approx(0.24));
  CHECK(NewsPayoff(0.2, 0.3, 0.5, 0.9) == doctest::Approx(0.258).epsilon(1e-12));
  CHECK(NewsPayoff(0.2, 0.3, 0.99, 0.9) == doctest::Approx(0.24).epsilon(1e-12));
}

TEST_CASE("news payoff agrees with a simulated signaling game") {
  const struct {
    double mu, c, beta, p;
  } cases[] = {{0.2, 0.3, 0.5, 0.9}, {0.2, 0.3, 0.99, 0.9}, {0.1, 0.4, 0.1, 0.5},
               {0.3, 0.45, 0.0, 1.0}};
  std::uint64_t seed = 1;
  for (const auto& k : cases) {
    const double sim = SimulatedNewsPayoff(k.mu, k.c, k.beta, k.p, 1'000'000, seed++);
    CHECK(std::abs(sim - NewsPayoff(k.mu, k.c, k.beta, k.p)) < 1e-3);
  }
}

TEST_CASE("news payoff monotonicity") {
  const double h = 1e-6;
  for (double beta = 0.0; beta < 0.58; beta += 0.05) {
    for (double p = 0.05; p < 1.0; p += 0.1) {
      // Trusting users lose from more deceit and gain from more reach.
      CHECK(NewsPayoff(0.2, 0.3, beta + h, p) <= NewsPayoff(0.2, 0.3, beta, p));
      CHECK(NewsPayoff(0.2, 0.3, beta, p + h) >= NewsPayoff(0.2, 0.3, beta, p));
      // Nobody is worse off than with no signal at all.
      CHECK(NewsPayoff(0.2, 0.3, beta, p) >= 0.24 - 1e-15);
    }
  }
}

TEST_CASE("social payoff") {
  CHECK(SocialPayoff(0, 0.7) == 0.0);
  CHECK(SocialPayoff(3, 0.01) == doctest::Approx(0.03));
}

TEST_CASE("user utility") {
  ModelParams params;
  params.b_A = 0.0;
  UserProfile user;
  CHECK(UserUtility(user, params, 0.0, Platform::kB, Platform::kB, 0, 0.9) ==
        doctest::Approx(0.366));
  CHECK(UserUtility(user, params, 0.7, Platform::kA, Platform::kB, 0, 0.0) ==
        doctest::Approx(0.24));
  CHECK(UserUtility(user, params, 0.7, Platform::kB, Platform::kB, 0, 0.9) ==
        doctest::Approx(0.24));
  params.b_A = 0.01;
  CHECK(UserUtility(user, params, 0.0, Platform::kA, Platform::kB, 3, 0.0) ==
        doctest::Approx(0.27));
  CHECK_THROWS_AS(UserUtility(user, params, 0.0, Platform::kA, Platform::kB, 0, 0.5),
                  ContractViolation);
}

TEST_CASE("sender utility") {
  const double bp = TrustThreshold(0.2, 0.3);
  std::vector<Receiver> one{{1.0, bp}};
  CHECK(SenderUtility(0.2, bp, one) == doctest::Approx(0.6666666666667));
  CHECK(SenderUtility(0.2, bp + 0.01, one) == 0.0);
  std::vector<Receiver> line;
  for (int k = 0; k < 400; ++k) line.push_back({std::pow(0.9, k), bp});
  CHECK(SenderUtility(0.2, 0.0, line) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("parameter validation") {
  ModelParams ok;
  CHECK_NOTHROW(ok.Validate());
  ModelParams bad = ok;
  bad.mu = 0.5;
  CHECK_THROWS_AS(bad.Validate(), InvalidParamsError);
  bad = ok;
  bad.p = 0.0;
  CHECK_THROWS_AS(bad.Validate(), InvalidParamsError);
  bad = ok;
  bad.b_A = -0.1;
  CHECK_THROWS_AS(bad.Validate(), InvalidParamsError);
  CHECK_THROWS_AS(ValidateProfile({0.1, 0}, 0.2), InvalidParamsError);
  CHECK_THROWS_AS(ValidateProfile({0.6, 0}, 0.2), InvalidParamsError);
  CHECK(ParsePlatform("B") == Platform::kB);
  CHECK_THROWS_AS(ParsePlatform("C"), InvalidParamsError);
}

}  // namespace
}  // namespace platreg
