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

#ifndef PLATREG_GRAPH_H_
#define PLATREG_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "platreg/model.h"

namespace platreg {

using Edge = std::pair<int, int>;

// Undirected simple friendship graph among users plus the set of users the
// sender reaches directly. The sender is not a user node: it has no friends
// and never counts towards a user's friend total. Immutable once built.
class Network {
 public:
  // Validates and canonicalizes (edges stored as i<j, sorted). Throws
  // InvalidParamsError on self-loops, duplicates, out-of-range ids, empty
  // sender_links, or community labels outside `community_sizes`.
  static Network Create(int n_users, std::vector<Edge> edges,
                        std::vector<int> sender_links,
                        std::vector<UserProfile> profiles,
                        std::vector<int> community_sizes = {},
                        nlohmann::json generator_meta = nlohmann::json::object());

  int n_users() const { return n_users_; }
  int n_communities() const { return static_cast<int>(community_sizes_.size()); }
  std::span<const int> neighbors(int user) const {
    return {adjacency_.data() + offsets_[user],
            adjacency_.data() + offsets_[user + 1]};
  }
  int degree(int user) const { return offsets_[user + 1] - offsets_[user]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& sender_links() const { return sender_links_; }
  bool is_sender_linked(int user) const { return sender_linked_[user] != 0; }
  const std::vector<UserProfile>& profiles() const { return profiles_; }
  const UserProfile& profile(int user) const { return profiles_[user]; }
  const std::vector<int>& community_sizes() const { return community_sizes_; }
  const nlohmann::json& generator_meta() const { return generator_meta_; }

  // Same topology with per-user payoffs replaced.
  Network WithPayoffs(std::vector<double> c) const;

 private:
  Network() = default;

  int n_users_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<int> adjacency_;
  std::vector<int> sender_links_;
  std::vector<char> sender_linked_;
  std::vector<UserProfile> profiles_;
  std::vector<int> community_sizes_;
  nlohmann::json generator_meta_;
};

// Every user's platform plus the sender's.
struct Assignment {
  std::vector<Platform> platforms;
  Platform sender_platform = Platform::kA;

  static Assignment AllOn(int n_users, Platform users, Platform sender);
  int CountOn(Platform p) const;
  bool operator==(const Assignment&) const = default;
};

// Users get the default payoff c=0.3 and community 0 unless stated.
inline constexpr double kDefaultPayoff = 0.3;

// Path 0-1-...-(n-1); the sender reaches user 0.
Network GenerateLinear(int n);

// Hubs 0..n_hubs-1 in a chain, each with r-1 pendant leaves; the sender
// reaches hub 0. Leaves of hub k are users n_hubs + k(r-1) + j.
Network GenerateStarChain(int n_hubs, int r);

// Complete r-ary tree in breadth-first numbering (children of i are
// r*i+1..r*i+r); the sender reaches the root. Refuses more than 1e7 users.
Network GenerateRegularTree(int r, int depth);

struct SbmSpec {
  std::vector<int> sizes;                  // users per community
  std::vector<std::vector<double>> theta;  // symmetric link probabilities
  int sender_community = 0;
  int sender_attach = 0;  // index within the sender community
  std::uint64_t seed = 0;

  void Validate() const;
};

// Stochastic block model. Users are numbered community by community. Each
// unordered pair (i<j) is visited in row-major order and consumes exactly one
// mt19937_64 draw u = (draw >> 11) * 2^-53; the edge exists iff u < theta.
// Same spec and seed give the identical edge set on every platform.
Network GenerateSbm(const SbmSpec& spec);

// Chain of communities: theta_JJ on the diagonal, theta_{J,J+1} =
// expected_links / (n_J n_{J+1}), zero elsewhere.
SbmSpec CommunityChainSbm(std::vector<int> sizes, std::vector<double> theta_diag,
                          double expected_links = 4.0);

// Complete graph of communities: theta_JJ' = expected_links / (n_J n_J').
SbmSpec CompleteCommunitySbm(std::vector<int> sizes, double theta_diag = 0.75,
                             double expected_links = 4.0);

// Hop distance to every user through users on the sender's platform.
// Directly linked users are at distance 0; unreachable users get -1.
std::vector<int> SenderDistances(const Network& network,
                                 const Assignment& assignment);

// p^dist for reachable users on the sender's platform, 0 otherwise.
std::vector<double> ReceiveProbs(const Network& network, const ModelParams& params,
                                 const Assignment& assignment);

// Receive probability `user` would have on `platform` if it alone moved
// there, everyone else fixed.
double HypotheticalReceiveProb(const Network& network, const ModelParams& params,
                               const Assignment& assignment, int user,
                               Platform platform);

// Same, given distances already computed for `assignment`; -1 when the user
// cannot be reached on the sender's platform.
int HypotheticalDistance(const Network& network, std::span<const int> distances,
                         int user);

nlohmann::json NetworkToJson(const Network& network);
Network NetworkFromJson(const nlohmann::json& doc);
Network ReadNetworkFile(const std::filesystem::path& path);
void WriteNetworkFile(const Network& network, const std::filesystem::path& path);

}  // namespace platreg

#endif  // PLATREG_GRAPH_H_
