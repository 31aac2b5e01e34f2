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

#ifndef TREEPLEX_OMD_H_
#define TREEPLEX_OMD_H_

#include <cstdint>
#include <span>

#include "treeplex/dilent.h"
#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

// Slack accepted on the [0, 1] reward range, for rounding in computed
// reward vectors. Values are never clipped.
inline constexpr double kRewardSlack = 1e-12;

// (Predictive) online mirror descent with the weight-one dilated entropy.
// Each episode is OmdPredict followed by OmdUpdate.
struct LearnerState {
  const Tfsdp* tfsdp = nullptr;
  DgfSpec dgf;
  double eta = 0.0;
  // Pivot as local log-probabilities, so long runs cannot underflow it.
  Behavioral pivot_log;
  Strategy pivot;
  // Strategy played in the current (or last) episode and its prediction.
  Strategy last_committed;
  std::vector<double> last_prediction;
  CompensatedSum cumulative_reward;
  CompensatedVectorSum summed_rewards;
  // Sum over episodes of ||w_t - m_t||_{H,inf}^2.
  CompensatedSum prediction_error;
  std::int64_t episode = 0;
  bool awaiting_update = false;
};

// Pivot at the regularizer's minimizer. Throws std::invalid_argument when
// eta <= 0 or the spec is not the weight-one entropy; the referenced
// tfsdp must outlive the state.
LearnerState OmdInit(const Tfsdp& tfsdp, double eta, DgfSpec dgf = {});

// x_t = prox(eta * m, pivot); an empty m means no prediction. Throws
// std::logic_error when the previous episode was not updated.
const Strategy& OmdPredict(LearnerState& state, std::span<const double> m = {});

// pivot <- prox(eta * w, pivot) and regret bookkeeping. Throws
// std::invalid_argument when w leaves [0, 1], std::logic_error when no
// prediction was made this episode.
void OmdUpdate(LearnerState& state, const RewardVector& w);

struct BestResponseResult {
  double value = 0.0;
  // Pure strategy; lowest action index on ties.
  Strategy strategy;
};

BestResponseResult BestResponse(const Tfsdp& tfsdp, std::span<const double> w);

// max_x <x, sum_t w_t> - sum_t <x_t, w_t>. Throws std::logic_error before
// the first update.
double CumulativeRegret(const LearnerState& state);

// Both sides of the predictive regret bound, evaluated at the realized
// hindsight best response x*.
struct PredictiveBound {
  double regret = 0.0;
  double divergence = 0.0;  // D(x* || initial pivot)
  double sum_sq_error = 0.0;
  double bound = 0.0;       // divergence / eta + eta / 2 * sum_sq_error
};
PredictiveBound EvaluatePredictiveBound(const LearnerState& state);

// sqrt(2 ln|V| / T), or 1 when |V| = 1 (every strategy is optimal).
double TunedEta(const Tfsdp& tfsdp, std::int64_t horizon);
// sqrt(2 ln|V| T).
double RegretBound(const Tfsdp& tfsdp, std::int64_t horizon);

}  // namespace treeplex

#endif  // TREEPLEX_OMD_H_
