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
#include <filesystem>
#include <random>
#include <vector>

#include "platreg/graph.h"

namespace platreg {
namespace {

std::vector<int> Degrees(const Network& net) {
  std::vector<int> d;
  for (int u = 0; u < net.n_users(); ++u) d.push_back(net.degree(u));
  return d;
}

int IntraEdges(const Network& net) {
  int n = 0;
  for (auto [a, b] : net.edges()) {
    if (net.profile(a).community == net.profile(b).community) ++n;
  }
  return n;
}

TEST_CASE("linear generator") {
  CHECK(GenerateLinear(1).edges().empty());
  CHECK(GenerateLinear(1).sender_links() == std::vector<int>{0});
  CHECK(GenerateLinear(3).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(Degrees(GenerateLinear(5)) == std::vector<int>{1, 2, 2, 2, 1});
}

TEST_CASE("star chain generator") {
  CHECK(GenerateStarChain(1, 1).n_users() == 1);
  const Network five = GenerateStarChain(5, 2);
  CHECK(five.n_users() == 10);
  CHECK(five.edges().size() == 9);
  const Network two = GenerateStarChain(2, 3);
  CHECK(two.degree(0) == 3);
  CHECK(two.degree(1) == 3);
  for (int u = 2; u < two.n_users(); ++u) CHECK(two.degree(u) == 1);
  // A middle hub has two hub friends and one leaf.
  CHECK(GenerateStarChain(3, 2).degree(1) == 3);
}

TEST_CASE("regular tree generator") {
  CHECK(GenerateRegularTree(2, 0).n_users() == 1);
  CHECK(GenerateRegularTree(2, 5).n_users() == 63);
  CHECK(GenerateRegularTree(3, 2).n_users() == 13);
  CHECK(GenerateRegularTree(3, 2).degree(0) == 3);
  CHECK(GenerateRegularTree(3, 2).degree(1) == 4);
}

TEST_CASE("sbm generator edge cases") {
  SbmSpec zero{{4, 5}, {{0.0, 0.0}, {0.0, 0.0}}, 0, 0, 1};
  CHECK(GenerateSbm(zero).edges().empty());
  SbmSpec full{{3}, {{1.0}}, 0, 0, 1};
  CHECK(GenerateSbm(full).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  SbmSpec asym{{2, 2}, {{0.5, 0.1}, {0.2, 0.5}}, 0, 0, 1};
  CHECK_THROWS_AS(GenerateSbm(asym), InvalidParamsError);
}

TEST_CASE("sbm intra-community edge count within five sigma") {
  SbmSpec spec = CommunityChainSbm({30, 30, 30}, {0.75, 0.75, 0.75});
  CHECK(spec.theta[0][1] == doctest::Approx(4.0 / 900));
  CHECK(spec.theta[0][2] == 0.0);
  spec.seed = 42;
  const double pairs = 3 * 435.0;
  const double mean = pairs * 0.75;
  const double sigma = std::sqrt(pairs * 0.75 * 0.25);
  CHECK(std::abs(IntraEdges(GenerateSbm(spec)) - mean) <= 5 * sigma);
}

TEST_CASE("sbm is deterministic in the seed") {
  SbmSpec spec = CompleteCommunitySbm({20, 30, 40, 50});
  spec.seed = 7;
  const Network a = GenerateSbm(spec);
  const Network b = GenerateSbm(spec);
  CHECK(a.edges() == b.edges());
  spec.seed = 8;
  CHECK(GenerateSbm(spec).edges() != a.edges());
  CHECK(a.community_sizes() == std::vector<int>{20, 30, 40, 50});
}

TEST_CASE("receive probabilities follow shortest paths") {
  // Two distinct two-hop paths reach user 3.
  const Network diamond = Network::Create(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {0},
                                          std::vector<UserProfile>(4));
  ModelParams params;
  params.p = 0.6;
  const auto all_b = Assignment::AllOn(4, Platform::kB, Platform::kB);
  const auto probs = ReceiveProbs(diamond, params, all_b);
  CHECK(probs[3] == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(probs[0] == 1.0);

  const Network line = GenerateLinear(3);
  params.p = 0.9;
  CHECK(ReceiveProbs(line, params, Assignment::AllOn(3, Platform::kA, Platform::kB)) ==
        std::vector<double>{0.0, 0.0, 0.0});
  Assignment first = Assignment::AllOn(3, Platform::kA, Platform::kB);
  first.platforms[0] = Platform::kB;
  CHECK(HypotheticalReceiveProb(line, params, first, 1, Platform::kB) ==
        doctest::Approx(0.9));
  CHECK(HypotheticalReceiveProb(line, params, first, 2, Platform::kB) == 0.0);
  CHECK(HypotheticalReceiveProb(line, params, first, 0, Platform::kB) ==
        ReceiveProbs(line, params, first)[0]);
}

TEST_CASE("property: moving a user to the sender's platform never lowers reach") {
  std::mt19937_64 rng(99);
  ModelParams params;
  params.p = 0.8;
  for (int trial = 0; trial < 100; ++trial) {
    SbmSpec spec{{8, 8}, {{0.4, 0.05}, {0.05, 0.4}}, 0, 0, rng()};
    const Network net = GenerateSbm(spec);
    Assignment a = Assignment::AllOn(net.n_users(), Platform::kA, Platform::kB);
    std::vector<double> before = ReceiveProbs(net, params, a);
    std::vector<int> order(net.n_users());
    for (int i = 0; i < net.n_users(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int u : order) {
      a.platforms[u] = Platform::kB;
      const std::vector<double> after = ReceiveProbs(net, params, a);
      for (int v = 0; v < net.n_users(); ++v) {
        if (a.platforms[v] == Platform::kB && v != u) CHECK(after[v] >= before[v]);
        CHECK(after[v] <= 1.0);
      }
      before = after;
    }
  }
}

TEST_CASE("network json round trip") {
  SbmSpec spec = CommunityChainSbm({5, 6, 7}, {0.5, 0.5, 0.5}, 2.0);
  spec.seed = 3;
  const Network net = GenerateSbm(spec).WithPayoffs(std::vector<double>(18, 0.4));
  const Network back = NetworkFromJson(NetworkToJson(net));
  CHECK(back.n_users() == net.n_users());
  CHECK(back.edges() == net.edges());
  CHECK(back.sender_links() == net.sender_links());
  CHECK(back.community_sizes() == net.community_sizes());
  for (int u = 0; u < net.n_users(); ++u) {
    CHECK(back.profile(u).c == net.profile(u).c);
    CHECK(back.profile(u).community == net.profile(u).community);
  }
  const auto path = std::filesystem::temp_directory_path() / "platreg_graph_test.json";
  WriteNetworkFile(net, path);
  CHECK(ReadNetworkFile(path).edges() == net.edges());
  std::filesystem::remove(path);
}

TEST_CASE("invalid networks") {
  CHECK_THROWS_AS(Network::Create(2, {{0, 0}}, {0}, std::vector<UserProfile>(2)),
                  InvalidParamsError);
  CHECK_THROWS_AS(Network::Create(2, {{0, 5}}, {0}, std::vector<UserProfile>(2)),
                  InvalidParamsError);
  CHECK_THROWS_AS(GenerateLinear(0), InvalidParamsError);
}

}  // namespace
}  // namespace platreg
