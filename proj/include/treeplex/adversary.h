// Copyright 2026 The Treeplex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREEPLEX_ADVERSARY_H_
#define TREEPLEX_ADVERSARY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "treeplex/efg.h"
#include "treeplex/omd.h"
#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

// Counter-based generator: SplitMix64 finalizer applied to the key
// (seed, episode, index). Order-independent and reproducible.
std::uint64_t KeyedHash(std::uint64_t seed, std::uint64_t episode,
                        std::uint64_t index);
bool KeyedCoin(std::uint64_t seed, std::uint64_t episode, std::uint64_t index);
// Uniform in [0, 1).
double KeyedUniform(std::uint64_t seed, std::uint64_t episode,
                    std::uint64_t index);

enum class PlanKind {
  kNone,    // off the construction path
  kBandit,  // decision point: fair coins on its terminal actions
  kRoute,   // decision point: all episodes go to one action
  kSplit,   // observation point: contiguous episode blocks per child
};

// Recursive hard reward sequence for a TFSDP. Each episode is routed down
// to exactly one bandit decision point; every other entry is 0.
struct HardInstance {
  const Tfsdp* tfsdp = nullptr;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  // Indexed by point id.
  std::vector<PlanKind> plan;
  std::vector<int> route;                          // kRoute: child sequence
  std::vector<std::vector<std::int64_t>> blocks;   // kSplit: sizes per child
  std::vector<std::int64_t> first_episode;         // 0-based start of range
  // Bandit decision point active in each episode (0-based).
  std::vector<int> episode_bandit;
};

// Throws std::invalid_argument when horizon < leaf count.
HardInstance BuildHardInstance(const Tfsdp& tfsdp, std::int64_t horizon,
                               std::uint64_t seed);

// One line per planned point, e.g. "A route 1" or "A:1 split B=256 C=256".
std::string DescribePlan(const HardInstance& instance);

// Reward vector of episode t, 1 <= t <= horizon. Throws std::out_of_range.
RewardVector AdversaryStep(const HardInstance& instance, std::int64_t t);

// w = r * y with a random mixed kernel y and r uniform in [0, 1).
RewardVector RandomRewardStep(const Tfsdp& tfsdp, std::uint64_t seed,
                              std::int64_t t);

enum class AdversaryKind { kHard, kRandom, kZero, kReplay };

struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::kHard;
  // kReplay: episode t receives replay[(t - 1) % size].
  std::vector<RewardVector> replay;
};

struct LearnerConfig {
  // <= 0 selects sqrt(2 ln|V| / T).
  double eta = 0.0;
  // Use the previous reward vector as the prediction.
  bool optimistic = false;
};

struct MatchResult {
  double eta = 0.0;
  std::vector<double> regret_curve;   // cumulative regret after each episode
  std::vector<double> reward_curve;   // <x_t, w_t> per episode
  PredictiveBound bound;
};

MatchResult RunMatch(const Tfsdp& tfsdp, const LearnerConfig& learner,
                     const AdversaryConfig& adversary, std::int64_t horizon,
                     std::uint64_t seed);

// Every player of the game runs its own learner against the others.
struct SelfPlayResult {
  std::vector<double> eta;
  std::vector<std::vector<double>> regret_curve;  // per player
};
SelfPlayResult RunSelfPlay(const SequenceFormGame& game,
                           const LearnerConfig& learner, std::int64_t horizon);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of log(value) on log(x) over the last half of the points.
// Throws std::invalid_argument with fewer than 8 points, non-positive
// entries or a degenerate x range.
RateFit EmpiricalRateFit(const std::vector<double>& x,
                         const std::vector<double>& values);
// x = 1, 2, ..., n.
RateFit EmpiricalRateFit(const std::vector<double>& curve);

}  // namespace treeplex

#endif  // TREEPLEX_ADVERSARY_H_
