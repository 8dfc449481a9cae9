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

#ifndef PLATREG_ANALYTIC_H_
#define PLATREG_ANALYTIC_H_

// Closed forms for the prototypical networks. Thresholds are expressed as the
// smallest social-quality gap (b_A - b_B on lines, r b_A - b_B on star chains
// and trees) at which any regulation keeps the sender on A.

#include <string>
#include <string_view>
#include <vector>

#include "platreg/model.h"
#include "platreg/regulation.h"

namespace platreg {

// Deceit level at which user K of a line is indifferent between platforms
// when users 0..K-1 are already on B: (mu(1-c) - gap/p^K) / ((1-mu)c), with
// gap = b_A - b_B. May be negative.
double LinearF(int K, const ModelParams& params, double c);

// Inverse of LinearF in K. Throws InvalidParamsError when the log argument
// is not positive.
double LinearG(double beta, const ModelParams& params, double c);

// f_K(p) = mu p^K - mu c p^K / (1 - p^(K+1)).
double FInfinite(int K, double p, double mu, double c);
// Finite line of n users; K = n-2 takes the special form mu(1-c)p^(n-2).
double FFinite(int n, int K, double p, double mu, double c);
// Finite star chain with n hubs, K <= n-1.
double GFinite(int n, int K, double p, double mu, double c);
// h_K(p) = mu p^K - mu c p^K / (1 - (pr)^(K+1)); requires pr != 1.
double HInfinite(int K, double p, int r, double mu, double c);
// Finite tree with n levels (depth n-1). The level-count ratio
// (1-(pr)^n)/(1-(pr)^(K+1)) is evaluated as a ratio of geometric sums, so
// pr = 1 gives n/(K+1).
double HFinite(int n, int K, double p, int r, double mu, double c);
// f_K with the payoff of the pivotal user K.
double FTilde(int K, double p, double mu, double c_k);

// Smallest K with mu p^K < 1e-15. Every f/g/h term is below mu p^K.
int KCap(double mu, double p);

// Older, looser sufficient bound min(mu(1-c), mu(1-c)^2/p).
double LooseLinearBound(double mu, double c, double p);

enum class Family {
  kLinearInfinite,
  kLinearFinite,
  kStarChainInfinite,
  kStarChainFinite,
  kTreeInfinite,
  kTreeFinite,
};

std::string_view FamilyName(Family family);
Family ParseFamily(std::string_view name);

struct FamilySpec {
  Family family = Family::kLinearInfinite;
  int n = 0;  // users (line), hubs (star chain) or levels (tree)
  int r = 1;
  double mu = 0.2;
  double p = 0.9;
  double c = 0.3;
  // Optional payoff of the user at distance K (last entry repeats); only
  // the infinite line uses it.
  std::vector<double> c_by_distance;

  void Validate() const;
};

// Smallest gap guaranteeing rho_SE = 0. An infinite tree with pr >= 1
// returns 0: any positive r b_A - b_B suffices. A one-user line returns
// +inf (the single user always follows the sender).
double ThresholdRho0(const FamilySpec& spec);

struct LinearOptimum {
  double u_star_b = 0.0;
  double beta_star = 0.0;
  int k_star = -1;          // last user on B; -1 when nobody moves
  bool k_infinite = false;  // every user follows at the trust threshold
};

// Sender's best utility on B on the infinite line.
LinearOptimum UStarBLinearInfinite(const ModelParams& params, double c);

// Regulation trichotomy on the infinite line with U_A = (mu+(1-mu)beta)/(1-p).
RegulationResult RhoSeLinearInfinite(const ModelParams& params, double c);

enum class Scaling { kChain, kStar };

struct ScalingPreset {
  std::vector<double> p_phi;  // receive probability of the first mover
  std::vector<double> R;      // expected receivers per community
};

// Chain: p_phi = (p, p^2, p^4, ...), R_J = n_J p^(2J+1) (0-based J).
// Star: p_phi = (p, p^2, p^2, ...), R = (n_1 p, n_J p^3, ...).
ScalingPreset ScalingPresets(Scaling kind, const std::vector<int>& sizes, double p);

struct SbmAnalyticSpec {
  std::vector<int> sizes;
  std::vector<double> theta_diag;
  std::vector<double> c;  // one per community, or a single shared value
  double mu = 0.2;
  double p = 0.9;
  double b_A = 0.0;
  double b_B = 0.0;
  Scaling scaling = Scaling::kChain;

  double c_of(int j) const { return c.size() == 1 ? c[0] : c[j]; }
  void Validate() const;
};

// Deceit level at which the first mover of community j (0-based) is
// indifferent when the communities before it are on B.
double BetaJ(const SbmAnalyticSpec& spec, int j, double p_phi_j);

struct SbmThreshold {
  std::vector<double> rhs;      // right-hand side per community
  std::vector<double> min_b_A;  // (rhs + b_B) / (n_J theta_JJ)
  double b_A_threshold = 0.0;   // max over communities, floored at 0
  bool satisfied = false;       // inequality holds for every community
};

SbmThreshold SbmThresholdFor(const SbmAnalyticSpec& spec);

struct ConditionCheck {
  std::string name;
  bool pass = false;
};

// Heuristic structural conditions under which the chain or star scalings
// are expected; theta_JJ ~ 1 is read as theta_JJ >= 0.7 and theta_JJ' ~ 0
// as n_J theta_JJ' < 1 for both communities. Advisory only.
std::vector<ConditionCheck> CheckScalingConditions(
    const std::vector<std::vector<double>>& theta, const std::vector<int>& sizes,
    Scaling kind);

}  // namespace platreg

#endif  // PLATREG_ANALYTIC_H_
