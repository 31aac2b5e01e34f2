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

#include "treeplex/omd.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "treeplex/metrics.h"
#include "treeplex/norms.h"

namespace treeplex {

LearnerState OmdInit(const Tfsdp& tfsdp, double eta, DgfSpec dgf) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("omd: eta must be positive and finite");
  }
  ValidateSpec(tfsdp, dgf);
  if (!dgf.unit()) {
    throw std::invalid_argument("omd: prox is implemented for unit weights only");
  }
  LearnerState s;
  s.tfsdp = &tfsdp;
  s.dgf = std::move(dgf);
  s.eta = eta;
  s.pivot_log = MinimizerLogBehavioral(tfsdp);
  s.pivot = DgfMinimizer(tfsdp);
  s.summed_rewards = CompensatedVectorSum(tfsdp.num_terminals());
  return s;
}

const Strategy& OmdPredict(LearnerState& state, std::span<const double> m) {
  if (state.awaiting_update) {
    throw std::logic_error("omd: predict called twice without update");
  }
  const Tfsdp& t = *state.tfsdp;
  if (m.empty()) {
    state.last_committed = state.pivot;
    state.last_prediction.clear();
  } else {
    std::vector<double> g(m.begin(), m.end());
    for (double& v : g) v *= state.eta;
    state.last_committed = ProxFromLog(t, g, state.pivot_log).strategy;
    state.last_prediction.assign(m.begin(), m.end());
  }
  state.awaiting_update = true;
  return state.last_committed;
}

void OmdUpdate(LearnerState& state, const RewardVector& w) {
  if (!state.awaiting_update) {
    throw std::logic_error("omd: update called without predict");
  }
  const Tfsdp& t = *state.tfsdp;
  if (static_cast<int>(w.size()) != t.num_terminals()) {
    throw std::invalid_argument("omd: reward vector has wrong dimension");
  }
  for (double v : w.values) {
    if (!(v >= -kRewardSlack && v <= 1.0 + kRewardSlack)) {
      throw std::invalid_argument("omd: reward " + std::to_string(v) +
                                  " outside [0, 1]");
    }
  }
  std::vector<double> diff(w.values);
  for (std::size_t i = 0; i < state.last_prediction.size(); ++i) {
    diff[i] -= state.last_prediction[i];
  }
  const double err = NormLinf(t, diff);
  state.prediction_error.Add(err * err);
  state.cumulative_reward.Add(Dot(state.last_committed, w));
  state.summed_rewards.Add(w);

  std::vector<double> g(w.values);
  for (double& v : g) v *= state.eta;
  auto next = ProxFromLog(t, g, state.pivot_log);
  state.pivot_log = std::move(next.log_behavioral);
  state.pivot = std::move(next.strategy);
  ++state.episode;
  state.awaiting_update = false;
}

BestResponseResult BestResponse(const Tfsdp& tfsdp, std::span<const double> w) {
  if (static_cast<int>(w.size()) != tfsdp.num_terminals()) {
    throw std::invalid_argument("best response: wrong dimension");
  }
  std::vector<double> value(tfsdp.num_points(), 0.0);
  std::vector<int> choice(tfsdp.num_points(), -1);
  for (int h : tfsdp.topo_order()) {
    const auto& ch = tfsdp.children(h);
    if (tfsdp.is_terminal(h)) {
      value[h] = w[tfsdp.terminal_index(h)];
    } else if (tfsdp.is_decision(h)) {
      int best = ch.front();
      for (int c : ch) {
        if (value[c] > value[best]) best = c;
      }
      choice[h] = best;
      value[h] = value[best];
    } else {
      double s = 0.0;
      for (int c : ch) s += value[c];
      value[h] = s;
    }
  }
  BestResponseResult out;
  out.value = value[tfsdp.root()];
  out.strategy = Strategy(tfsdp.num_terminals());
  std::vector<int> stack = {tfsdp.root()};
  while (!stack.empty()) {
    const int h = stack.back();
    stack.pop_back();
    if (tfsdp.is_terminal(h)) {
      out.strategy[tfsdp.terminal_index(h)] = 1.0;
    } else if (tfsdp.is_decision(h)) {
      stack.push_back(choice[h]);
    } else {
      for (int c : tfsdp.children(h)) stack.push_back(c);
    }
  }
  return out;
}

double CumulativeRegret(const LearnerState& state) {
  if (state.episode == 0) throw std::logic_error("regret: no episodes yet");
  return BestResponse(*state.tfsdp, state.summed_rewards.values()).value -
         state.cumulative_reward.value();
}

PredictiveBound EvaluatePredictiveBound(const LearnerState& state) {
  const Tfsdp& t = *state.tfsdp;
  const auto br = BestResponse(t, state.summed_rewards.values());
  PredictiveBound b;
  b.regret = br.value - state.cumulative_reward.value();
  b.divergence = BregmanFromLog(t, br.strategy, MinimizerLogBehavioral(t));
  b.sum_sq_error = state.prediction_error.value();
  b.bound = b.divergence / state.eta + 0.5 * state.eta * b.sum_sq_error;
  return b;
}

double TunedEta(const Tfsdp& tfsdp, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("tuned eta: horizon must be >= 1");
  const double log_v = LogVertexCount(tfsdp);
  if (log_v <= 0.0) return 1.0;
  return std::sqrt(2.0 * log_v / static_cast<double>(horizon));
}

double RegretBound(const Tfsdp& tfsdp, std::int64_t horizon) {
  return std::sqrt(2.0 * LogVertexCount(tfsdp) * static_cast<double>(horizon));
}

}  // namespace treeplex
