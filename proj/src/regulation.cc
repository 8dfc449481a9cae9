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

#include "platreg/regulation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "platreg/adoption.h"

namespace platreg {
namespace {

// Sender utility on A as a function of beta, with every user on A.
class CurveOnA {
 public:
  CurveOnA(const Network& network, const ModelParams& params) : mu_(params.mu) {
    params.Validate();
    const Assignment all_a =
        Assignment::AllOn(network.n_users(), Platform::kA, Platform::kA);
    p_ = ReceiveProbs(network, params, all_a);
    for (int i = 0; i < network.n_users(); ++i) {
      ValidateProfile(network.profile(i), params.mu);
      beta_prime_.push_back(TrustThreshold(params.mu, network.profile(i).c));
      sum_p_ += p_[i];
      if (p_[i] > 0.0) kinks_.push_back(beta_prime_[i]);
    }
    std::sort(kinks_.begin(), kinks_.end());
    kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
  }

  double Mass(double beta) const {
    double m = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (Trusts(beta, beta_prime_[i])) m += p_[i];
    }
    return m;
  }
  double Utility(double beta) const { return (mu_ + (1.0 - mu_) * beta) * Mass(beta); }

  // Best beta in [0, rho] and its utility; smallest beta on ties.
  std::pair<double, double> BestUpTo(double rho) const {
    double best_beta = 0.0;
    double best_u = Utility(0.0);
    auto consider = [&](double beta) {
      const double u = Utility(beta);
      if (u > best_u) {
        best_u = u;
        best_beta = beta;
      }
    };
    for (double k : kinks_) {
      if (k > rho) break;
      consider(k);
    }
    consider(rho);
    return {best_beta, best_u};
  }

  // Smallest rho whose best admissible utility reaches `target`. Requires
  // Utility(0) < target <= max utility.
  double SmallestReaching(double target) const {
    double prev = 0.0;
    for (double k : kinks_) {
      const double m = Mass(k);
      const double rho = (target / m - mu_) / (1.0 - mu_);
      if (rho <= k) return std::max(rho, prev);
      prev = k;
    }
    return kinks_.empty() ? 0.0 : kinks_.back();
  }

  double sum_p() const { return sum_p_; }
  double max_kink() const { return kinks_.empty() ? 0.0 : kinks_.back(); }

 private:
  double mu_;
  std::vector<double> p_;
  std::vector<double> beta_prime_;
  std::vector<double> kinks_;
  double sum_p_ = 0.0;
};

// Memoized adoption runs at exact beta values.
class Evaluator {
 public:
  Evaluator(const Network& network, const ModelParams& params)
      : solver_(network, params), mu_(params.mu) {}

  struct Entry {
    double utility;
    std::vector<char> on_b;
  };

  const Entry& At(double beta) {
    auto it = memo_.find(beta);
    if (it != memo_.end()) return it->second;
    AdoptionSolver::Result r = solver_.Run(beta);
    it = memo_.emplace(beta, Entry{r.sender_utility, std::move(r.on_b)}).first;
    if (r.sender_utility > best_u_ ||
        (r.sender_utility == best_u_ && beta < best_beta_)) {
      best_u_ = r.sender_utility;
      best_beta_ = beta;
    }
    return it->second;
  }

  // Start points of intervals on which the trust set is constant.
  std::vector<double> SplitPoints() const {
    std::vector<double> pts = solver_.thresholds();
    pts.push_back(0.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  double max_threshold() const { return solver_.max_threshold(); }
  double mu() const { return mu_; }
  double best_u() const { return best_u_; }
  double best_beta() const { return best_beta_; }

 private:
  AdoptionSolver solver_;
  std::map<double, Entry> memo_;
  double mu_;
  double best_u_ = -1.0;
  double best_beta_ = 0.0;
};

int CountOnB(const std::vector<char>& on_b) {
  return static_cast<int>(std::count(on_b.begin(), on_b.end(), 1));
}

void Bisect(Evaluator& ev, bool prune, std::vector<AdopterBreak>* breaks) {
  const std::vector<double> pts = ev.SplitPoints();
  for (double b : pts) ev.At(b);
  const double mu = ev.mu();

  struct Interval {
    double bound;
    double lo;
    double hi;
    bool operator<(const Interval& o) const {
      if (bound != o.bound) return bound < o.bound;
      return lo > o.lo;
    }
  };
  // Utility anywhere in (lo, hi] is at most (mu + (1-mu) hi) times the
  // trusted receive mass at lo: the B-set, the distances and the trust set
  // can only shrink as beta grows.
  auto bound_of = [&](double lo, double hi) {
    const double u_lo = ev.At(lo).utility;
    return u_lo / (mu + (1.0 - mu) * lo) * (mu + (1.0 - mu) * hi);
  };
  std::priority_queue<Interval> open;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    open.push({bound_of(pts[k], pts[k + 1]), pts[k], pts[k + 1]});
  }
  while (!open.empty()) {
    const Interval cur = open.top();
    open.pop();
    if (prune && cur.bound <= ev.best_u()) continue;
    const std::vector<char>& lo_set = ev.At(cur.lo).on_b;
    const std::vector<char>& hi_set = ev.At(cur.hi).on_b;
    if (lo_set == hi_set) continue;
    if (cur.hi - cur.lo <= kBisectionWidth) {
      if (breaks != nullptr) {
        breaks->push_back({cur.lo, cur.hi, CountOnB(lo_set), CountOnB(hi_set)});
      }
      continue;
    }
    const double mid = 0.5 * (cur.lo + cur.hi);
    ev.At(mid);
    open.push({bound_of(cur.lo, mid), cur.lo, mid});
    open.push({bound_of(mid, cur.hi), mid, cur.hi});
  }
}

}  // namespace

std::string_view RegulationKindName(RegulationKind kind) {
  switch (kind) {
    case RegulationKind::kNoEffective:
      return "no_effective_regulation";
    case RegulationKind::kAny:
      return "any_regulation";
    case RegulationKind::kModerate:
      return "moderate";
  }
  return "unknown";
}

nlohmann::json RegulationToJson(const RegulationResult& result) {
  nlohmann::json j = {{"kind", RegulationKindName(result.kind)},
                      {"u_star_b", result.u_star_b},
                      {"beta_star_b", result.beta_star_b},
                      {"sum_p_A", result.sum_p_A}};
  if (result.rho_se) j["rho_se"] = *result.rho_se;
  return j;
}

double UtilityOnA(const Network& network, const ModelParams& params, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidParamsError("beta must lie in [0, 1]");
  }
  return CurveOnA(network, params).Utility(beta);
}

SenderDecision OptimalB(const Network& network, const ModelParams& params,
                        BetaSearch search) {
  Evaluator ev(network, params);
  if (search == BetaSearch::kGrid) {
    for (double b : ev.SplitPoints()) ev.At(b);
    const double top = ev.max_threshold();
    for (long k = 0; k * kGridStep <= top; ++k) ev.At(k * kGridStep);
  } else {
    Bisect(ev, /*prune=*/true, nullptr);
  }
  SenderDecision d;
  d.platform = Platform::kB;
  d.utility = std::max(ev.best_u(), 0.0);
  d.beta_star = d.utility > 0.0 ? ev.best_beta() : 0.0;
  return d;
}

std::vector<AdopterBreak> AdopterBreakpoints(const Network& network,
                                             const ModelParams& params) {
  Evaluator ev(network, params);
  std::vector<AdopterBreak> breaks;
  Bisect(ev, /*prune=*/false, &breaks);
  std::sort(breaks.begin(), breaks.end(),
            [](const AdopterBreak& a, const AdopterBreak& b) { return a.lo < b.lo; });
  return breaks;
}

RegulationResult StrictestEffectiveRegulation(const Network& network,
                                              const ModelParams& params,
                                              BetaSearch search) {
  const CurveOnA curve(network, params);
  const SenderDecision on_b = OptimalB(network, params, search);
  RegulationResult res;
  res.u_star_b = on_b.utility;
  res.beta_star_b = on_b.beta_star;
  res.sum_p_A = curve.sum_p();
  const auto [beta_free, u_free] = curve.BestUpTo(curve.max_kink());
  res.beta_free = beta_free;
  res.u_a_free = u_free;

  if (u_free <= res.u_star_b + kTieTolerance) {
    res.kind = RegulationKind::kNoEffective;
    return res;
  }
  if (curve.Utility(0.0) >= res.u_star_b - kTieTolerance) {
    res.kind = RegulationKind::kAny;
    res.rho_se = 0.0;
    return res;
  }
  res.kind = RegulationKind::kModerate;
  double rho = curve.SmallestReaching(res.u_star_b);
  rho = std::clamp(rho, std::nextafter(0.0, 1.0), std::nextafter(beta_free, 0.0));
  res.rho_se = rho;
  return res;
}

SenderDecision SenderEquilibrium(const Network& network, const ModelParams& params,
                                 BetaSearch search) {
  const CurveOnA curve(network, params);
  const SenderDecision on_b = OptimalB(network, params, search);
  const auto [beta_a, u_a] = curve.BestUpTo(std::min(params.rho_A, curve.max_kink()));
  if (u_a + kTieTolerance >= on_b.utility) {
    return SenderDecision{Platform::kA, beta_a, u_a};
  }
  return on_b;
}

}  // namespace platreg
