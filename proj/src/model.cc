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

#include "platreg/model.h"

#include <cmath>
#include <string>

namespace platreg {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParamsError(what);
}

bool InUnit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

std::string_view PlatformName(Platform p) {
  return p == Platform::kA ? "A" : "B";
}

Platform ParsePlatform(std::string_view name) {
  if (name == "A" || name == "a") return Platform::kA;
  if (name == "B" || name == "b") return Platform::kB;
  throw InvalidParamsError("unknown platform '" + std::string(name) + "'");
}

void ModelParams::Validate() const {
  Require(std::isfinite(mu) && mu > 0.0 && mu < 0.5,
          "mu must lie in (0, 1/2), got " + std::to_string(mu));
  Require(std::isfinite(p) && p > 0.0 && p < 1.0,
          "p must lie in (0, 1), got " + std::to_string(p));
  Require(std::isfinite(b_A) && b_A >= 0.0, "b_A must be >= 0");
  Require(std::isfinite(b_B) && b_B >= 0.0, "b_B must be >= 0");
  Require(InUnit(rho_A), "rho_A must lie in [0, 1]");
  Require(rho_B == 1.0, "rho_B is fixed at 1");
}

void ValidateProfile(const UserProfile& profile, double mu) {
  Require(std::isfinite(profile.c) && profile.c > mu && profile.c < 0.5,
          "user payoff c must satisfy mu < c < 1/2, got c=" +
              std::to_string(profile.c));
  Require(profile.community >= 0, "community label must be >= 0");
}

double TrustThreshold(double mu, double c) {
  Require(mu > 0.0 && mu < c && c < 0.5,
          "trust threshold needs 0 < mu < c < 1/2");
  return mu * (1.0 - c) / ((1.0 - mu) * c);
}

double NewsPayoff(double mu, double c, double beta, double p_recv) {
  Require(InUnit(beta), "beta must lie in [0, 1]");
  Require(InUnit(p_recv), "receive probability must lie in [0, 1]");
  if (!Trusts(beta, TrustThreshold(mu, c))) return (1.0 - mu) * c;
  return mu * p_recv * (1.0 - c) + (1.0 - mu) * (1.0 - beta * p_recv) * c;
}

double UserUtility(const UserProfile& profile, const ModelParams& params,
                   double beta, Platform platform, Platform sender_platform,
                   int n_friends_on_platform, double p_recv) {
  if (platform != sender_platform && p_recv != 0.0) {
    throw ContractViolation(
        "receive probability must be 0 off the sender's platform");
  }
  Require(n_friends_on_platform >= 0, "friend count must be >= 0");
  const double b = platform == Platform::kA ? params.b_A : params.b_B;
  return SocialPayoff(n_friends_on_platform, b) +
         NewsPayoff(params.mu, profile.c, beta, p_recv);
}

double SenderUtility(double mu, double beta,
                     std::span<const Receiver> receivers) {
  Require(InUnit(beta), "beta must lie in [0, 1]");
  double mass = 0.0;
  for (const Receiver& r : receivers) {
    if (Trusts(beta, r.beta_prime)) mass += r.p_recv;
  }
  return (mu + (1.0 - mu) * beta) * mass;
}

}  // namespace platreg
