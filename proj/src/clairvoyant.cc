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

#include "treeplex/clairvoyant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeplex/norms.h"
#include "treeplex/omd.h"

namespace treeplex {
namespace {

double LinfDistance(const Tfsdp& tfsdp, const RewardVector& a,
                    const RewardVector& b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return NormLinf(tfsdp, d);
}

int CeilLog2(int k) {
  int l = 0;
  while ((1LL << l) < k) ++l;
  return l;
}

}  // namespace

RunLog ClairvoyantRun(const SequenceFormGame& game, const ClairvoyantConfig& config) {
  const int n = game.num_players();
  if (n < 1) throw std::invalid_argument("clairvoyant: game has no players");
  if (config.episodes < 1) throw std::invalid_argument("clairvoyant: K must be >= 1");
  RunLog log;
  log.num_players = n;
  log.episodes = config.episodes;
  log.inner_steps = config.inner_steps < 0 ? CeilLog2(config.episodes) : config.inner_steps;
  log.eta = config.eta > 0.0 ? config.eta : 1.0 / (2.0 * n);
  if (!std::isfinite(log.eta)) throw std::invalid_argument("clairvoyant: eta not finite");
  log.contraction_flag = n * log.eta >= 1.0;
  const int L = log.inner_steps;

  std::vector<LearnerState> learners;
  learners.reserve(n);
  for (int i = 0; i < n; ++i) learners.push_back(OmdInit(game.tfsdp(i), log.eta));

  auto rewards = [&](const JointPolicy& joint) {
    std::vector<RewardVector> w(n);
    for (int i = 0; i < n; ++i) w[i] = game.Reward(joint, i);
    ++log.oracle_calls;
    return w;
  };
  auto prox_step = [&](int i, const RewardVector& w) {
    std::vector<double> g(w.values);
    for (double& v : g) v *= log.eta;
    return ProxFromLog(game.tfsdp(i), g, learners[i].pivot_log).strategy;
  };

  log.residuals.reserve(static_cast<std::size_t>(config.episodes) * L * n);
  log.prediction_errors.reserve(static_cast<std::size_t>(config.episodes) * n);
  log.gap_curve.reserve(config.episodes);
  std::vector<CompensatedVectorSum> sums;
  std::vector<CompensatedSum> utility(n);
  for (int i = 0; i < n; ++i) sums.emplace_back(game.tfsdp(i).num_terminals());

  for (int t = 0; t < config.episodes; ++t) {
    JointPolicy joint(n);
    for (int i = 0; i < n; ++i) joint[i] = learners[i].pivot;
    auto w = rewards(joint);
    std::vector<RewardVector> prediction;  // w_{t,L}; empty when L = 0
    for (int l = 1; l <= L; ++l) {
      JointPolicy next(n);
      for (int i = 0; i < n; ++i) next[i] = prox_step(i, w[i]);
      auto w_next = rewards(next);
      for (int i = 0; i < n; ++i) {
        log.residuals.push_back(LinfDistance(game.tfsdp(i), w_next[i], w[i]));
      }
      prediction = std::move(w);
      w = std::move(w_next);
      joint = std::move(next);
    }
    // joint = x_{t,L+1} = prox(eta * w_{t,L}, pivot); w = w_{t,L+1}.
    for (int i = 0; i < n; ++i) {
      if (prediction.empty()) {
        OmdPredict(learners[i]);
      } else {
        OmdPredict(learners[i], prediction[i]);
      }
      OmdUpdate(learners[i], w[i]);
      const double err = prediction.empty()
                             ? NormLinf(game.tfsdp(i), w[i])
                             : LinfDistance(game.tfsdp(i), w[i], prediction[i]);
      log.prediction_errors.push_back(err);
      sums[i].Add(w[i]);
      utility[i].Add(Dot(joint[i], w[i]));
    }
    double gap = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double br = BestResponse(game.tfsdp(i), sums[i].values()).value;
      gap = std::max(gap, (br - utility[i].value()) / (t + 1));
    }
    log.gap_curve.push_back(gap);
    if (config.keep_profiles) log.profiles.push_back(std::move(joint));
  }
  for (int i = 0; i < n; ++i) {
    log.summed_rewards.push_back(sums[i].values());
    log.summed_utility.push_back(utility[i].value());
    log.regret.push_back(CumulativeRegret(learners[i]));
  }
  return log;
}

CorrelatedMixture AveragePolicy(const RunLog& log) {
  if (log.profiles.empty()) {
    throw std::invalid_argument("average policy: run kept no profiles");
  }
  return CorrelatedMixture{log.profiles};
}

CceGap ComputeCceGap(const SequenceFormGame& game, const CorrelatedMixture& mixture) {
  if (mixture.profiles.empty()) throw std::invalid_argument("cce gap: empty mixture");
  const int n = game.num_players();
  CceGap out;
  out.max_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    CompensatedVectorSum w(game.tfsdp(i).num_terminals());
    CompensatedSum u;
    for (const auto& joint : mixture.profiles) {
      const auto r = game.Reward(joint, i);
      w.Add(r);
      u.Add(Dot(joint[i], r));
    }
    auto mean = w.values();
    for (double& v : mean) v *= mixture.weight();
    const double gap =
        BestResponse(game.tfsdp(i), mean).value - u.value() * mixture.weight();
    out.per_player.push_back(gap);
    out.max_gap = std::max(out.max_gap, gap);
  }
  return out;
}

CceGap ComputeCceGap(const SequenceFormGame& game, const RunLog& log) {
  CceGap out;
  out.max_gap = -std::numeric_limits<double>::infinity();
  const double k = static_cast<double>(log.episodes);
  for (int i = 0; i < game.num_players(); ++i) {
    const double gap =
        (BestResponse(game.tfsdp(i), log.summed_rewards[i]).value -
         log.summed_utility[i]) / k;
    out.per_player.push_back(gap);
    out.max_gap = std::max(out.max_gap, gap);
  }
  return out;
}

}  // namespace treeplex
