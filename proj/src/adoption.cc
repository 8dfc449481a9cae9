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

#include "platreg/adoption.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace platreg {
namespace {

// Utility on the sender's platform minus utility on the other one.
double SenderSideGain(const ModelParams& params, double c, double beta,
                      Platform sender, int n_on_sender_side, int n_on_other,
                      double p_hyp) {
  const double b_s = sender == Platform::kA ? params.b_A : params.b_B;
  const double b_o = sender == Platform::kA ? params.b_B : params.b_A;
  const double v_s =
      SocialPayoff(n_on_sender_side, b_s) + NewsPayoff(params.mu, c, beta, p_hyp);
  const double v_o = SocialPayoff(n_on_other, b_o) + (1.0 - params.mu) * c;
  return v_s - v_o;
}

Platform Decide(double gain, double p_hyp, Platform current, Platform sender) {
  if (gain > kTieTolerance) return sender;
  if (gain < -kTieTolerance) return Other(sender);
  return p_hyp > 0.0 ? sender : current;
}

void CheckBeta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidParamsError("beta must lie in [0, 1]");
  }
}

void CheckInputs(const Network& network, const ModelParams& params) {
  params.Validate();
  for (const UserProfile& pr : network.profiles()) ValidateProfile(pr, params.mu);
}

// Gain of joining the sender's platform for every user under `assignment`.
std::vector<double> Gains(const Network& network, const ModelParams& params,
                          double beta, const Assignment& assignment,
                          std::vector<double>* p_hyp_out) {
  const std::vector<int> dist = SenderDistances(network, assignment);
  const Platform s = assignment.sender_platform;
  std::vector<double> gains(network.n_users());
  p_hyp_out->assign(network.n_users(), 0.0);
  for (int i = 0; i < network.n_users(); ++i) {
    int n_s = 0;
    for (int v : network.neighbors(i)) n_s += assignment.platforms[v] == s;
    const int d = HypotheticalDistance(network, dist, i);
    const double p_hyp = d < 0 ? 0.0 : std::pow(params.p, d);
    (*p_hyp_out)[i] = p_hyp;
    gains[i] = SenderSideGain(params, network.profile(i).c, beta, s, n_s,
                              network.degree(i) - n_s, p_hyp);
  }
  return gains;
}

}  // namespace

Platform BestResponse(const Network& network, const ModelParams& params,
                      double beta, const Assignment& assignment, int user) {
  CheckBeta(beta);
  const std::vector<int> dist = SenderDistances(network, assignment);
  const Platform s = assignment.sender_platform;
  int n_s = 0;
  for (int v : network.neighbors(user)) n_s += assignment.platforms[v] == s;
  const int d = HypotheticalDistance(network, dist, user);
  const double p_hyp = d < 0 ? 0.0 : std::pow(params.p, d);
  const double gain = SenderSideGain(params, network.profile(user).c, beta, s, n_s,
                                     network.degree(user) - n_s, p_hyp);
  return Decide(gain, p_hyp, assignment.platforms[user], s);
}

std::vector<int> NashCheck(const Network& network, const ModelParams& params,
                           double beta, const Assignment& assignment) {
  CheckBeta(beta);
  std::vector<double> p_hyp;
  const std::vector<double> gains = Gains(network, params, beta, assignment, &p_hyp);
  std::vector<int> deviators;
  for (int i = 0; i < network.n_users(); ++i) {
    const bool on_sender = assignment.platforms[i] == assignment.sender_platform;
    const double gain_of_switch = on_sender ? -gains[i] : gains[i];
    if (gain_of_switch > kTieTolerance) deviators.push_back(i);
  }
  return deviators;
}

AdoptionSolver::AdoptionSolver(const Network& network, const ModelParams& params)
    : network_(network), params_(params) {
  CheckInputs(network, params);
  const int n = network.n_users();
  beta_prime_.resize(n);
  for (int i = 0; i < n; ++i) {
    beta_prime_[i] = TrustThreshold(params.mu, network.profile(i).c);
    max_beta_prime_ = std::max(max_beta_prime_, beta_prime_[i]);
  }
  pow_p_.resize(n + 1);
  pow_p_[0] = 1.0;
  for (int d = 1; d <= n; ++d) pow_p_[d] = std::pow(params.p, d);
  dist_.resize(n);
  n_b_friends_.resize(n);
  queue_.reserve(n);
  switchers_.reserve(n);
}

AdoptionSolver::Result AdoptionSolver::Run(double beta,
                                           std::vector<std::vector<int>>* trace) {
  CheckBeta(beta);
  const Network& net = network_;
  const int n = net.n_users();
  const double mu = params_.mu;
  Result result;
  result.on_b.assign(n, 0);
  std::fill(n_b_friends_.begin(), n_b_friends_.end(), 0);
  std::vector<char>& on_b = result.on_b;

  for (;;) {
    // Distances through B users, directly linked users at 0.
    std::fill(dist_.begin(), dist_.end(), -1);
    queue_.clear();
    for (int u : net.sender_links()) {
      if (on_b[u]) {
        dist_[u] = 0;
        queue_.push_back(u);
      }
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int u = queue_[head];
      for (int v : net.neighbors(u)) {
        if (on_b[v] && dist_[v] < 0) {
          dist_[v] = dist_[u] + 1;
          queue_.push_back(v);
        }
      }
    }

    switchers_.clear();
    for (int i = 0; i < n; ++i) {
      int d = -1;
      if (net.is_sender_linked(i)) {
        d = 0;
      } else {
        for (int v : net.neighbors(i)) {
          if (dist_[v] >= 0 && (d < 0 || dist_[v] + 1 < d)) d = dist_[v] + 1;
        }
      }
      const double p_hyp = d < 0 ? 0.0 : pow_p_[d];
      const double c = net.profile(i).c;
      const double psi =
          Trusts(beta, beta_prime_[i])
              ? mu * p_hyp * (1.0 - c) + (1.0 - mu) * (1.0 - beta * p_hyp) * c
              : (1.0 - mu) * c;
      const int n_b = n_b_friends_[i];
      const double gain = (n_b * params_.b_B + psi) -
                          ((net.degree(i) - n_b) * params_.b_A + (1.0 - mu) * c);
      const Platform current = on_b[i] ? Platform::kB : Platform::kA;
      const Platform next = Decide(gain, p_hyp, current, Platform::kB);
      if (current == Platform::kB && next == Platform::kA) {
        throw InvariantViolation("user " + std::to_string(i) +
                                 " left B during adoption (beta=" +
                                 std::to_string(beta) + ")");
      }
      if (current != next) switchers_.push_back(i);
    }
    if (switchers_.empty()) break;

    ++result.iterations;
    if (result.iterations > n) {
      throw InvariantViolation("adoption exceeded " + std::to_string(n + 1) +
                               " iterations");
    }
    for (int i : switchers_) {
      on_b[i] = 1;
      for (int v : net.neighbors(i)) ++n_b_friends_[v];
    }
    if (trace != nullptr) trace->push_back(switchers_);
  }

  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    if (on_b[i] && dist_[i] >= 0 && Trusts(beta, beta_prime_[i])) {
      mass += pow_p_[dist_[i]];
    }
  }
  result.sender_utility = (mu + (1.0 - mu) * beta) * mass;
  result.dist = dist_;
  return result;
}

EquilibriumOutcome RunAdoption(const Network& network, const ModelParams& params,
                               double beta, Platform sender_platform,
                               bool record_trace) {
  CheckBeta(beta);
  EquilibriumOutcome out;
  if (sender_platform == Platform::kA) {
    CheckInputs(network, params);
    out.assignment = Assignment::AllOn(network.n_users(), Platform::kA, Platform::kA);
    out.p_recv = ReceiveProbs(network, params, out.assignment);
    out.converged = true;
    return out;
  }
  AdoptionSolver solver(network, params);
  std::vector<std::vector<int>> trace;
  AdoptionSolver::Result r = solver.Run(beta, record_trace ? &trace : nullptr);
  out.assignment.sender_platform = Platform::kB;
  out.assignment.platforms.resize(network.n_users());
  out.p_recv.assign(network.n_users(), 0.0);
  for (int i = 0; i < network.n_users(); ++i) {
    out.assignment.platforms[i] = r.on_b[i] ? Platform::kB : Platform::kA;
    if (r.on_b[i] && r.dist[i] >= 0) out.p_recv[i] = std::pow(params.p, r.dist[i]);
  }
  out.iterations = r.iterations;
  out.trace = std::move(trace);
  out.converged = true;
  return out;
}

}  // namespace platreg
