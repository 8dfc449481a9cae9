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

#ifndef PLATREG_MODEL_H_
#define PLATREG_MODEL_H_

// Scalar parameters and closed-form payoffs of the sender/user game.
//
// A sender observes a binary world state w (Prob(w=1) = mu) and reports
// s=1 always when w=1 and with probability beta ("deceitfulness") when w=0.
// Users receive the report with some probability and decide whether to act
// on it. Everything here is the expectation over w, s and the users'
// estimates; no randomness is simulated.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace platreg {

// Absolute tolerance for tie detection between utilities and thresholds.
inline constexpr double kTieTolerance = 1e-12;

class InvalidParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition that is not a parameter-domain
// issue (e.g. nonzero receive probability off the sender's platform).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant that the theory guarantees was observed to fail.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Platform : std::uint8_t { kA = 0, kB = 1 };

inline Platform Other(Platform p) {
  return p == Platform::kA ? Platform::kB : Platform::kA;
}
std::string_view PlatformName(Platform p);
Platform ParsePlatform(std::string_view name);

struct ModelParams {
  double mu = 0.2;     // Prob(w = 1), in (0, 1/2).
  double p = 0.9;      // per-edge diffusiveness, in (0, 1).
  double b_A = 0.01;   // social quality per friend on A.
  double b_B = 0.0;    // social quality per friend on B.
  double rho_A = 1.0;  // cap on beta enforced by A.
  double rho_B = 1.0;  // B never regulates.

  void Validate() const;
};

struct UserProfile {
  double c = 0.3;     // payoff for a correct a=w=0; mu < c < 1/2.
  int community = 0;  // 0 when the network has no community structure.
};

void ValidateProfile(const UserProfile& profile, double mu);

// Largest beta at which acting on s=1 is optimal: mu(1-c) / ((1-mu)c).
double TrustThreshold(double mu, double c);

// True when a user with threshold `beta_prime` acts on the signal.
inline bool Trusts(double beta, double beta_prime) {
  return beta <= beta_prime + kTieTolerance;
}

// Expected news consumption payoff Psi for a user with payoff `c`.
double NewsPayoff(double mu, double c, double beta, double p_recv);

inline double SocialPayoff(int n_friends, double b) { return n_friends * b; }

// V = Phi + Psi on `platform`. Throws ContractViolation when p_recv > 0
// although the user is not on the sender's platform.
double UserUtility(const UserProfile& profile, const ModelParams& params,
                   double beta, Platform platform, Platform sender_platform,
                   int n_friends_on_platform, double p_recv);

struct Receiver {
  double p_recv = 0.0;
  double beta_prime = 0.0;
};

// Expected number of users choosing a=1. Users whose own threshold is
// below beta ignore the signal and contribute nothing.
double SenderUtility(double mu, double beta, std::span<const Receiver> receivers);

}  // namespace platreg

#endif  // PLATREG_MODEL_H_
