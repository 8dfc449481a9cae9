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

#include "platreg/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

namespace platreg {
namespace {

constexpr std::int64_t kMaxUsers = 10'000'000;

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParamsError(what);
}

std::vector<UserProfile> DefaultProfiles(int n) {
  return std::vector<UserProfile>(n, UserProfile{kDefaultPayoff, 0});
}

}  // namespace

Network Network::Create(int n_users, std::vector<Edge> edges,
                        std::vector<int> sender_links,
                        std::vector<UserProfile> profiles,
                        std::vector<int> community_sizes,
                        nlohmann::json generator_meta) {
  Require(n_users >= 1, "network needs at least one user");
  Require(static_cast<int>(profiles.size()) == n_users,
          "profiles must have one entry per user");
  for (Edge& e : edges) {
    Require(e.first >= 0 && e.first < n_users && e.second >= 0 &&
                e.second < n_users,
            "edge endpoint out of range");
    Require(e.first != e.second, "self-loop on user " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  Require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(),
          "duplicate edge");

  Require(!sender_links.empty(), "sender must reach at least one user");
  std::sort(sender_links.begin(), sender_links.end());
  sender_links.erase(std::unique(sender_links.begin(), sender_links.end()),
                     sender_links.end());
  for (int u : sender_links) {
    Require(u >= 0 && u < n_users, "sender link out of range");
  }

  if (community_sizes.empty()) {
    int n_comm = 0;
    for (const UserProfile& pr : profiles) {
      n_comm = std::max(n_comm, pr.community + 1);
    }
    community_sizes.assign(n_comm, 0);
    for (const UserProfile& pr : profiles) {
      if (pr.community >= 0) ++community_sizes[pr.community];
    }
  }
  for (const UserProfile& pr : profiles) {
    Require(pr.community >= 0 &&
                pr.community < static_cast<int>(community_sizes.size()),
            "community label out of range");
  }

  Network net;
  net.n_users_ = n_users;
  net.offsets_.assign(n_users + 1, 0);
  for (const Edge& e : edges) {
    ++net.offsets_[e.first + 1];
    ++net.offsets_[e.second + 1];
  }
  for (int i = 0; i < n_users; ++i) net.offsets_[i + 1] += net.offsets_[i];
  net.adjacency_.resize(net.offsets_.back());
  std::vector<int> fill(net.offsets_.begin(), net.offsets_.end() - 1);
  for (const Edge& e : edges) {
    net.adjacency_[fill[e.first]++] = e.second;
    net.adjacency_[fill[e.second]++] = e.first;
  }
  net.edges_ = std::move(edges);
  net.sender_linked_.assign(n_users, 0);
  for (int u : sender_links) net.sender_linked_[u] = 1;
  net.sender_links_ = std::move(sender_links);
  net.profiles_ = std::move(profiles);
  net.community_sizes_ = std::move(community_sizes);
  net.generator_meta_ = std::move(generator_meta);
  return net;
}

Network Network::WithPayoffs(std::vector<double> c) const {
  Require(static_cast<int>(c.size()) == n_users_,
          "payoff vector must have one entry per user");
  Network copy = *this;
  for (int i = 0; i < n_users_; ++i) copy.profiles_[i].c = c[i];
  return copy;
}

Assignment Assignment::AllOn(int n_users, Platform users, Platform sender) {
  return Assignment{std::vector<Platform>(n_users, users), sender};
}

int Assignment::CountOn(Platform p) const {
  return static_cast<int>(std::count(platforms.begin(), platforms.end(), p));
}

Network GenerateLinear(int n) {
  Require(n >= 1, "linear network needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Network::Create(n, std::move(edges), {0}, DefaultProfiles(n), {n},
                         {{"kind", "linear"}, {"n", n}});
}

Network GenerateStarChain(int n_hubs, int r) {
  Require(n_hubs >= 1 && r >= 1, "star chain needs n_hubs >= 1 and r >= 1");
  const std::int64_t total = static_cast<std::int64_t>(n_hubs) * r;
  Require(total <= kMaxUsers, "star chain too large");
  const int n = static_cast<int>(total);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int k = 0; k + 1 < n_hubs; ++k) edges.emplace_back(k, k + 1);
  for (int k = 0; k < n_hubs; ++k) {
    for (int j = 0; j < r - 1; ++j) edges.emplace_back(k, n_hubs + k * (r - 1) + j);
  }
  return Network::Create(n, std::move(edges), {0}, DefaultProfiles(n), {n},
                         {{"kind", "star_chain"}, {"n_hubs", n_hubs}, {"r", r}});
}

Network GenerateRegularTree(int r, int depth) {
  Require(r >= 1 && depth >= 0, "regular tree needs r >= 1 and depth >= 0");
  std::int64_t total = 0;
  std::int64_t level = 1;
  for (int d = 0; d <= depth; ++d) {
    total += level;
    Require(total <= kMaxUsers, "regular tree exceeds 1e7 users");
    level *= r;
  }
  const int n = static_cast<int>(total);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int child = 1; child < n; ++child) edges.emplace_back((child - 1) / r, child);
  return Network::Create(n, std::move(edges), {0}, DefaultProfiles(n), {n},
                         {{"kind", "regular_tree"}, {"r", r}, {"depth", depth}});
}

void SbmSpec::Validate() const {
  const int m = static_cast<int>(sizes.size());
  Require(m >= 1, "SBM needs at least one community");
  for (int s : sizes) Require(s >= 1, "community sizes must be >= 1");
  Require(static_cast<int>(theta.size()) == m, "theta must be M x M");
  for (int a = 0; a < m; ++a) {
    Require(static_cast<int>(theta[a].size()) == m, "theta must be M x M");
    for (int b = 0; b < m; ++b) {
      Require(theta[a][b] >= 0.0 && theta[a][b] <= 1.0,
              "theta entries must lie in [0, 1]");
      Require(theta[a][b] == theta[b][a], "theta must be symmetric");
    }
  }
  Require(sender_community >= 0 && sender_community < m,
          "sender community out of range");
  Require(sender_attach >= 0 && sender_attach < sizes[sender_community],
          "sender attachment index out of range");
}

Network GenerateSbm(const SbmSpec& spec) {
  spec.Validate();
  std::int64_t total = 0;
  for (int s : spec.sizes) total += s;
  Require(total <= kMaxUsers, "SBM too large");
  const int n = static_cast<int>(total);

  std::vector<UserProfile> profiles;
  profiles.reserve(n);
  std::vector<int> offset;
  for (int comm = 0; comm < static_cast<int>(spec.sizes.size()); ++comm) {
    offset.push_back(static_cast<int>(profiles.size()));
    for (int k = 0; k < spec.sizes[comm]; ++k) {
      profiles.push_back(UserProfile{kDefaultPayoff, comm});
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const std::vector<double>& row = spec.theta[profiles[i].community];
    for (int j = i + 1; j < n; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < row[profiles[j].community]) edges.emplace_back(i, j);
    }
  }

  nlohmann::json meta = {{"kind", "sbm"},
                         {"sizes", spec.sizes},
                         {"theta", spec.theta},
                         {"sender_community", spec.sender_community},
                         {"sender_attach", spec.sender_attach},
                         {"seed", spec.seed},
                         {"rng", "mt19937_64"}};
  const int sender_user = offset[spec.sender_community] + spec.sender_attach;
  return Network::Create(n, std::move(edges), {sender_user}, std::move(profiles),
                         spec.sizes, std::move(meta));
}

SbmSpec CommunityChainSbm(std::vector<int> sizes, std::vector<double> theta_diag,
                          double expected_links) {
  const int m = static_cast<int>(sizes.size());
  Require(static_cast<int>(theta_diag.size()) == m,
          "one diagonal theta per community");
  SbmSpec spec;
  spec.theta.assign(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a) {
    spec.theta[a][a] = theta_diag[a];
    if (a + 1 < m) {
      const double t = expected_links / (static_cast<double>(sizes[a]) * sizes[a + 1]);
      spec.theta[a][a + 1] = spec.theta[a + 1][a] = t;
    }
  }
  spec.sizes = std::move(sizes);
  return spec;
}

SbmSpec CompleteCommunitySbm(std::vector<int> sizes, double theta_diag,
                             double expected_links) {
  const int m = static_cast<int>(sizes.size());
  SbmSpec spec;
  spec.theta.assign(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      spec.theta[a][b] =
          a == b ? theta_diag
                 : expected_links / (static_cast<double>(sizes[a]) * sizes[b]);
    }
  }
  spec.sizes = std::move(sizes);
  return spec;
}

std::vector<int> SenderDistances(const Network& network,
                                 const Assignment& assignment) {
  const int n = network.n_users();
  std::vector<int> dist(n, -1);
  std::vector<int> queue;
  queue.reserve(n);
  for (int u : network.sender_links()) {
    if (assignment.platforms[u] == assignment.sender_platform) {
      dist[u] = 0;
      queue.push_back(u);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : network.neighbors(u)) {
      if (dist[v] < 0 && assignment.platforms[v] == assignment.sender_platform) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<double> ReceiveProbs(const Network& network, const ModelParams& params,
                                 const Assignment& assignment) {
  const std::vector<int> dist = SenderDistances(network, assignment);
  std::vector<double> probs(dist.size(), 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= 0) probs[i] = std::pow(params.p, dist[i]);
  }
  return probs;
}

int HypotheticalDistance(const Network& network, std::span<const int> distances,
                         int user) {
  if (network.is_sender_linked(user)) return 0;
  int best = -1;
  for (int v : network.neighbors(user)) {
    if (distances[v] >= 0 && (best < 0 || distances[v] + 1 < best)) {
      best = distances[v] + 1;
    }
  }
  return best;
}

double HypotheticalReceiveProb(const Network& network, const ModelParams& params,
                               const Assignment& assignment, int user,
                               Platform platform) {
  if (platform != assignment.sender_platform) return 0.0;
  const std::vector<int> dist = SenderDistances(network, assignment);
  const int d = HypotheticalDistance(network, dist, user);
  return d < 0 ? 0.0 : std::pow(params.p, d);
}

nlohmann::json NetworkToJson(const Network& network) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : network.edges()) edges.push_back({e.first, e.second});
  nlohmann::json profiles = nlohmann::json::array();
  for (const UserProfile& pr : network.profiles()) {
    profiles.push_back({{"c", pr.c}, {"community", pr.community}});
  }
  nlohmann::json meta = network.generator_meta();
  if (!meta.is_object()) meta = nlohmann::json::object();
  meta["community_sizes"] = network.community_sizes();
  return {{"n_users", network.n_users()},
          {"edges", std::move(edges)},
          {"sender_links", network.sender_links()},
          {"profiles", std::move(profiles)},
          {"generator_meta", std::move(meta)}};
}

Network NetworkFromJson(const nlohmann::json& doc) {
  try {
    const int n = doc.at("n_users").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      Require(e.is_array() && e.size() == 2, "edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<int> links = doc.at("sender_links").get<std::vector<int>>();
    std::vector<UserProfile> profiles;
    for (const auto& pr : doc.at("profiles")) {
      profiles.push_back(UserProfile{pr.at("c").get<double>(),
                                     pr.value("community", 0)});
    }
    nlohmann::json meta = doc.value("generator_meta", nlohmann::json::object());
    std::vector<int> sizes;
    if (meta.contains("community_sizes")) {
      sizes = meta["community_sizes"].get<std::vector<int>>();
    }
    return Network::Create(n, std::move(edges), std::move(links),
                           std::move(profiles), std::move(sizes), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParamsError(std::string("malformed network document: ") + e.what());
  }
}

Network ReadNetworkFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParamsError("cannot open network file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParamsError(path.string() + ": " + e.what());
  }
  return NetworkFromJson(doc);
}

void WriteNetworkFile(const Network& network, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write network file " + path.string());
  out << NetworkToJson(network).dump() << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace platreg
