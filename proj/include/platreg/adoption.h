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

#ifndef PLATREG_ADOPTION_H_
#define PLATREG_ADOPTION_H_

#include <vector>

#include "platreg/graph.h"
#include "platreg/model.h"

namespace platreg {

struct EquilibriumOutcome {
  Assignment assignment;
  std::vector<double> p_recv;
  // Number of iterations in which at least one user switched.
  int iterations = 0;
  // Users that switched in each productive iteration, ascending ids.
  std::vector<std::vector<int>> trace;
  bool converged = false;
};

// Platform `user` picks given everyone else's current platform. Utilities
// within kTieTolerance are a tie: the user joins the sender's platform if the
// signal would reach it there, and otherwise keeps its current platform.
Platform BestResponse(const Network& network, const ModelParams& params,
                      double beta, const Assignment& assignment, int user);

// Synchronous best-response process from the all-A state. With the sender on
// A the initial state is returned as is. Throws InvariantViolation if a user
// ever leaves B or the process runs past n_users + 1 iterations.
EquilibriumOutcome RunAdoption(const Network& network, const ModelParams& params,
                               double beta, Platform sender_platform,
                               bool record_trace = true);

// Users whose unilateral switch raises their utility by more than the tie
// tolerance. Empty iff `assignment` is an equilibrium.
std::vector<int> NashCheck(const Network& network, const ModelParams& params,
                           double beta, const Assignment& assignment);

// Reusable adoption runner for one (network, params) pair. Caches per-user
// thresholds, powers of p and scratch buffers, so repeated runs at different
// beta avoid reallocation. Not thread-safe; use one per thread.
class AdoptionSolver {
 public:
  AdoptionSolver(const Network& network, const ModelParams& params);

  // Final B-set (1 = on B) when the sender moves to B, the users' distances
  // from the sender on B (-1 if unreached) and the sender's expected utility
  // there. Same dynamics as RunAdoption; switch sets go to `trace` if given.
  struct Result {
    std::vector<char> on_b;
    std::vector<int> dist;
    double sender_utility = 0.0;
    int iterations = 0;
  };
  Result Run(double beta, std::vector<std::vector<int>>* trace = nullptr);

  const std::vector<double>& thresholds() const { return beta_prime_; }
  double max_threshold() const { return max_beta_prime_; }

 private:
  const Network& network_;
  ModelParams params_;
  std::vector<double> beta_prime_;
  std::vector<double> pow_p_;
  double max_beta_prime_ = 0.0;

  std::vector<int> dist_;
  std::vector<int> n_b_friends_;
  std::vector<int> queue_;
  std::vector<int> switchers_;
};

}  // namespace platreg

#endif  // PLATREG_ADOPTION_H_
