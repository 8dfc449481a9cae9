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

#include "platreg/analytic.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace platreg {
namespace {

constexpr double kEnvelopeFloor = 1e-15;

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParamsError(what);
}

void CheckScalars(double p, double mu, double c) {
  Require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  Require(mu > 0.0 && mu < c && c < 0.5, "need 0 < mu < c < 1/2");
}

// sum_{k<m} x^k, exact at x = 1.
double GeometricSum(double x, int m) {
  if (x == 1.0) return m;
  return (1.0 - std::pow(x, m)) / (1.0 - x);
}

}  // namespace

double LinearF(int K, const ModelParams& params, double c) {
  Require(K >= 0, "K must be >= 0");
  const double gap = params.b_A - params.b_B;
  const double mu = params.mu;
  return (mu * (1.0 - c) - gap / std::pow(params.p, K)) / ((1.0 - mu) * c);
}

double LinearG(double beta, const ModelParams& params, double c) {
  const double mu = params.mu;
  const double gap = params.b_A - params.b_B;
  const double denom = mu * (1.0 - c) - (1.0 - mu) * beta * c;
  Require(gap > 0.0 && denom > 0.0, "G is undefined for this beta and gap");
  return std::log(gap / denom) / std::log(params.p);
}

double FInfinite(int K, double p, double mu, double c) {
  CheckScalars(p, mu, c);
  const double pk = std::pow(p, K);
  return mu * pk - mu * c * pk / (1.0 - p * pk);
}

double FFinite(int n, int K, double p, double mu, double c) {
  CheckScalars(p, mu, c);
  Require(n >= 2 && K >= 0 && K <= n - 2, "f_{n,K} needs 0 <= K <= n-2");
  const double pk = std::pow(p, K);
  if (K == n - 2) return mu * (1.0 - c) * pk;
  return mu * pk - (1.0 - std::pow(p, n)) * mu * c * pk / (1.0 - p * pk);
}

double GFinite(int n, int K, double p, double mu, double c) {
  CheckScalars(p, mu, c);
  Require(n >= 1 && K >= 0 && K <= n - 1, "g_{n,K} needs 0 <= K <= n-1");
  const double pk = std::pow(p, K);
  return mu * pk - (1.0 - std::pow(p, n)) * mu * c * pk / (1.0 - p * pk);
}

double HInfinite(int K, double p, int r, double mu, double c) {
  CheckScalars(p, mu, c);
  Require(r >= 1, "r must be >= 1");
  const double pr = p * r;
  Require(pr != 1.0, "h_K is singular at pr = 1");
  const double pk = std::pow(p, K);
  return mu * pk - mu * c * pk / (1.0 - std::pow(pr, K + 1));
}

double HFinite(int n, int K, double p, int r, double mu, double c) {
  CheckScalars(p, mu, c);
  Require(r >= 1, "r must be >= 1");
  Require(n >= 2 && K >= 0 && K <= n - 2, "h_{n,K} needs 0 <= K <= n-2");
  const double pk = std::pow(p, K);
  if (K == n - 2) return mu * (1.0 - c) * pk;
  const double pr = p * r;
  return mu * pk - GeometricSum(pr, n) / GeometricSum(pr, K + 1) * mu * c * pk;
}

double FTilde(int K, double p, double mu, double c_k) {
  return FInfinite(K, p, mu, c_k);
}

int KCap(double mu, double p) {
  Require(p > 0.0 && p < 1.0 && mu > 0.0, "KCap needs 0 < p < 1, mu > 0");
  int k = 0;
  while (mu * std::pow(p, k) >= kEnvelopeFloor) ++k;
  return k;
}

double LooseLinearBound(double mu, double c, double p) {
  CheckScalars(p, mu, c);
  return std::min(mu * (1.0 - c), mu * (1.0 - c) * (1.0 - c) / p);
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kLinearInfinite:
      return "linear-infinite";
    case Family::kLinearFinite:
      return "linear-finite";
    case Family::kStarChainInfinite:
      return "star-chain-infinite";
    case Family::kStarChainFinite:
      return "star-chain-finite";
    case Family::kTreeInfinite:
      return "tree-infinite";
    case Family::kTreeFinite:
      return "tree-finite";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kLinearInfinite, Family::kLinearFinite,
                   Family::kStarChainInfinite, Family::kStarChainFinite,
                   Family::kTreeInfinite, Family::kTreeFinite}) {
    if (FamilyName(f) == name) return f;
  }
  throw InvalidParamsError("unknown family '" + std::string(name) + "'");
}

void FamilySpec::Validate() const {
  CheckScalars(p, mu, c);
  Require(r >= 1, "r must be >= 1");
  const bool finite = family == Family::kLinearFinite ||
                      family == Family::kStarChainFinite ||
                      family == Family::kTreeFinite;
  if (finite) Require(n >= 1, "finite families need n >= 1");
  for (double ck : c_by_distance) CheckScalars(p, mu, ck);
}

double ThresholdRho0(const FamilySpec& spec) {
  spec.Validate();
  const double mu = spec.mu;
  const double p = spec.p;
  const double c = spec.c;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double best = -kInf;
  switch (spec.family) {
    case Family::kLinearInfinite:
    case Family::kStarChainInfinite: {
      const int cap = KCap(mu, p);
      for (int k = 0; k <= cap; ++k) {
        double ck = c;
        if (!spec.c_by_distance.empty()) {
          ck = spec.c_by_distance[std::min<std::size_t>(k, spec.c_by_distance.size() - 1)];
        }
        best = std::max(best, FTilde(k, p, mu, ck));
      }
      break;
    }
    case Family::kLinearFinite:
      if (spec.n == 1) return kInf;
      for (int k = 0; k <= spec.n - 2; ++k) best = std::max(best, FFinite(spec.n, k, p, mu, c));
      break;
    case Family::kStarChainFinite:
      for (int k = 0; k <= spec.n - 1; ++k) best = std::max(best, GFinite(spec.n, k, p, mu, c));
      break;
    case Family::kTreeInfinite: {
      if (p * spec.r >= 1.0) return 0.0;
      const int cap = KCap(mu, p);
      for (int k = 0; k <= cap; ++k) best = std::max(best, HInfinite(k, p, spec.r, mu, c));
      break;
    }
    case Family::kTreeFinite:
      if (spec.n == 1) return kInf;
      for (int k = 0; k <= spec.n - 2; ++k) {
        best = std::max(best, HFinite(spec.n, k, p, spec.r, mu, c));
      }
      break;
  }
  return best;
}

LinearOptimum UStarBLinearInfinite(const ModelParams& params, double c) {
  params.Validate();
  CheckScalars(params.p, params.mu, c);
  const double mu = params.mu;
  const double p = params.p;
  LinearOptimum best;
  if (params.b_A - params.b_B <= 0.0) {
    best.k_infinite = true;
    best.beta_star = TrustThreshold(mu, c);
    best.u_star_b = (mu + (1.0 - mu) * best.beta_star) / (1.0 - p);
    return best;
  }
  const int cap = KCap(mu, p);
  for (int k = 0; k <= cap; ++k) {
    const double f = LinearF(k, params, c);
    if (f < 0.0) break;  // F decreases in K
    const double u = (mu + (1.0 - mu) * f) * (1.0 - std::pow(p, k + 1)) / (1.0 - p);
    if (u > best.u_star_b) {
      best.u_star_b = u;
      best.beta_star = f;
      best.k_star = k;
    }
  }
  return best;
}

RegulationResult RhoSeLinearInfinite(const ModelParams& params, double c) {
  const LinearOptimum opt = UStarBLinearInfinite(params, c);
  const double mu = params.mu;
  const double sum_p = 1.0 / (1.0 - params.p);
  const double beta_prime = TrustThreshold(mu, c);
  RegulationResult res;
  res.u_star_b = opt.u_star_b;
  res.beta_star_b = opt.beta_star;
  res.sum_p_A = sum_p;
  res.beta_free = beta_prime;
  res.u_a_free = (mu + (1.0 - mu) * beta_prime) * sum_p;
  if (res.u_a_free <= res.u_star_b + kTieTolerance) {
    res.kind = RegulationKind::kNoEffective;
  } else if (mu * sum_p >= res.u_star_b - kTieTolerance) {
    res.kind = RegulationKind::kAny;
    res.rho_se = 0.0;
  } else {
    res.kind = RegulationKind::kModerate;
    res.rho_se = ((1.0 - params.p) * res.u_star_b - mu) / (1.0 - mu);
  }
  return res;
}

ScalingPreset ScalingPresets(Scaling kind, const std::vector<int>& sizes, double p) {
  Require(!sizes.empty(), "need at least one community");
  Require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  ScalingPreset out;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    const double n = sizes[j];
    if (kind == Scaling::kChain) {
      out.p_phi.push_back(j == 0 ? p : std::pow(p, 2.0 * j));
      out.R.push_back(n * std::pow(p, 2.0 * j + 1.0));
    } else {
      out.p_phi.push_back(j == 0 ? p : p * p);
      out.R.push_back(j == 0 ? n * p : n * p * p * p);
    }
  }
  return out;
}

void SbmAnalyticSpec::Validate() const {
  const std::size_t m = sizes.size();
  Require(m >= 1, "need at least one community");
  Require(theta_diag.size() == m, "one theta_JJ per community");
  Require(c.size() == 1 || c.size() == m, "c must be shared or per community");
  for (std::size_t j = 0; j < m; ++j) {
    Require(sizes[j] >= 1 && theta_diag[j] > 0.0 && theta_diag[j] <= 1.0,
            "sizes and theta_JJ must be positive");
    CheckScalars(p, mu, c_of(static_cast<int>(j)));
  }
  Require(b_A >= 0.0 && b_B >= 0.0, "b_A, b_B must be >= 0");
}

double BetaJ(const SbmAnalyticSpec& spec, int j, double p_phi_j) {
  spec.Validate();
  Require(j >= 0 && j < static_cast<int>(spec.sizes.size()), "community out of range");
  Require(p_phi_j > 0.0 && p_phi_j <= 1.0, "p_phi must lie in (0, 1]");
  const double c = spec.c_of(j);
  const double mu = spec.mu;
  const double lhs = spec.sizes[j] * spec.theta_diag[j] * spec.b_A - spec.b_B;
  return (mu * (1.0 - c) - lhs / p_phi_j) / ((1.0 - mu) * c);
}

SbmThreshold SbmThresholdFor(const SbmAnalyticSpec& spec) {
  spec.Validate();
  const ScalingPreset pre = ScalingPresets(spec.scaling, spec.sizes, spec.p);
  const int m = static_cast<int>(spec.sizes.size());
  const double mu = spec.mu;
  SbmThreshold out;
  out.satisfied = true;
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    double head = 0.0;
    double tail = 0.0;
    for (int l = 0; l < m; ++l) (l <= j ? head : tail) += pre.R[l];
    const double c = spec.c_of(j);
    const double rhs = mu * (1.0 - c) * pre.p_phi[j] - tail / head * mu * c * pre.p_phi[j];
    const double weight = spec.sizes[j] * spec.theta_diag[j];
    out.rhs.push_back(rhs);
    out.min_b_A.push_back((rhs + spec.b_B) / weight);
    best = std::max(best, out.min_b_A.back());
    if (weight * spec.b_A - spec.b_B < rhs - kTieTolerance) out.satisfied = false;
  }
  out.b_A_threshold = best;
  return out;
}

std::vector<ConditionCheck> CheckScalingConditions(
    const std::vector<std::vector<double>>& theta, const std::vector<int>& sizes,
    Scaling kind) {
  const int m = static_cast<int>(sizes.size());
  Require(static_cast<int>(theta.size()) == m, "theta must be M x M");
  for (const auto& row : theta) Require(static_cast<int>(row.size()) == m, "theta must be M x M");
  std::vector<ConditionCheck> out;
  bool cohesive = true;
  for (int j = 0; j < m; ++j) cohesive = cohesive && theta[j][j] >= 0.7;
  out.push_back({"theta_JJ >= 0.7", cohesive});

  auto sparse_but_linked = [&](int a, int b) {
    const double t = theta[a][b];
    return sizes[a] * t < 1.0 && sizes[b] * t < 1.0 &&
           static_cast<double>(sizes[a]) * sizes[b] * t > 1.0;
  };
  if (kind == Scaling::kChain) {
    bool adj = true;
    for (int j = 0; j + 1 < m; ++j) adj = adj && sparse_but_linked(j, j + 1);
    out.push_back({"n_J theta_JJ' < 1 < n_J n_J' theta_JJ' (adjacent)", adj});
    bool single_side = true;
    for (int j = 1; j + 1 < m; ++j) {
      const double v = static_cast<double>(sizes[j]) * sizes[j - 1] * theta[j][j - 1] *
                       sizes[j + 1] * theta[j][j + 1];
      single_side = single_side && v < 1.0;
    }
    out.push_back({"n_J n_(J-1) theta_J,J-1 n_(J+1) theta_J,J+1 < 1", single_side});
  } else {
    bool hub = true;
    for (int j = 1; j < m; ++j) hub = hub && sparse_but_linked(0, j);
    out.push_back({"n_1 theta_1J < 1, n_J theta_1J < 1 < n_1 n_J theta_1J", hub});
    bool others = true;
    for (int a = 1; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        others = others && sizes[a] * theta[a][b] < 1.0 && sizes[b] * theta[a][b] < 1.0;
      }
    }
    out.push_back({"theta_JJ' ~ 0 between non-sender communities", others});
  }
  return out;
}

}  // namespace platreg
