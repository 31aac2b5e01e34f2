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

#ifndef TREEPLEX_CLAIRVOYANT_H_
#define TREEPLEX_CLAIRVOYANT_H_

#include <cstdint>
#include <vector>

#include "treeplex/efg.h"
#include "treeplex/vectors.h"

namespace treeplex {

struct ClairvoyantConfig {
  // <= 0 selects 1 / (2n).
  double eta = 0.0;
  int episodes = 1;
  // < 0 selects ceil(log2(episodes)).
  int inner_steps = -1;
  // Kept for the audit trail; the dynamics are deterministic.
  std::uint64_t seed = 0;
  bool keep_profiles = true;
};

struct RunLog {
  int num_players = 0;
  int episodes = 0;
  int inner_steps = 0;
  double eta = 0.0;
  // n * eta >= 1: the inner fixed-point iteration need not contract.
  bool contraction_flag = false;
  std::int64_t oracle_calls = 0;

  // Committed joint profile of every episode (empty unless keep_profiles).
  std::vector<JointPolicy> profiles;
  // Per player: sum over episodes of that episode's reward vector and of
  // the realized utility.
  std::vector<std::vector<double>> summed_rewards;
  std::vector<double> summed_utility;
  // Per player, from the learner's own accounting.
  std::vector<double> regret;

  // residual[(t * inner_steps + (l - 1)) * num_players + i] =
  // ||w_{t,l+1} - w_{t,l}||_{H,inf} for player i, l = 1..inner_steps.
  std::vector<double> residuals;
  // ||w_t - m_t||_{H,inf} per (t, i).
  std::vector<double> prediction_errors;
  // Max CCE gap of the first t + 1 episodes' uniform mixture.
  std::vector<double> gap_curve;

  double Residual(int t, int l, int player) const {
    return residuals[(static_cast<std::size_t>(t) * inner_steps + (l - 1)) *
                         num_players + player];
  }
};

// Decentralized clairvoyant mirror descent: in episode t every player starts
// from its pivot, iterates x <- prox(eta * w(x), pivot) for inner_steps
// rounds against live reward vectors, commits the last iterate, observes its
// reward vector and updates the pivot with it. Players move in lockstep.
// Throws std::invalid_argument on invalid parameters.
RunLog ClairvoyantRun(const SequenceFormGame& game, const ClairvoyantConfig& config);

struct CorrelatedMixture {
  std::vector<JointPolicy> profiles;
  double weight() const { return 1.0 / static_cast<double>(profiles.size()); }
};

// Uniform mixture of the committed profiles. Throws when none were kept.
CorrelatedMixture AveragePolicy(const RunLog& log);

struct CceGap {
  std::vector<double> per_player;
  double max_gap = 0.0;
};

// gap_i = max_x <x, mean_t w_t^i> - mean_t u^i(pi_t).
CceGap ComputeCceGap(const SequenceFormGame& game, const CorrelatedMixture& mixture);
// Same, from the run's summed statistics.
CceGap ComputeCceGap(const SequenceFormGame& game, const RunLog& log);

}  // namespace treeplex

#endif  // TREEPLEX_CLAIRVOYANT_H_
