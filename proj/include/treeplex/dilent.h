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

#ifndef TREEPLEX_DILENT_H_
#define TREEPLEX_DILENT_H_

#include <span>
#include <vector>

#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

// Smallest behavioral probability accepted in a user-supplied pivot.
inline constexpr double kInteriorFloor = 1e-12;

// Weighted dilated entropy: sum over decision points j of
// weight_j * x[p_j] * (negative entropy of the local distribution at j).
struct DgfSpec {
  // Indexed by point id; only decision point entries are used. Empty means
  // every weight is 1, the weight-one dilated entropy.
  std::vector<double> weights;

  bool unit() const { return weights.empty(); }
  double weight(int j) const { return weights.empty() ? 1.0 : weights[j]; }
};

// Throws std::invalid_argument unless every decision point weight is > 0.
void ValidateSpec(const Tfsdp& tfsdp, const DgfSpec& spec);

// sum_j weight_j sum_a x[ja] ln(x[ja] / x[j]) with 0 ln 0 = 0.
// Throws std::invalid_argument when x is not a strategy.
double DilEntValue(const Tfsdp& tfsdp, const Strategy& x,
                   const DgfSpec& spec = {});

// Minimizer of the weight-one dilated entropy: b_j[a] = |V_ja| / |V_j|,
// where |V_h| counts the pure strategies of the subtree at h. Its value is
// -ln|V|.
Behavioral MinimizerLogBehavioral(const Tfsdp& tfsdp);
Strategy DgfMinimizer(const Tfsdp& tfsdp);

// Local log-probabilities of an interior strategy. Throws
// std::invalid_argument when some behavioral probability is below
// kInteriorFloor.
Behavioral InteriorLogBehavioral(const Tfsdp& tfsdp, const Strategy& pivot);

// sum_j weight_j x_new[j] KL(b_new_j || b_pivot_j).
double Bregman(const Tfsdp& tfsdp, const Strategy& x_new,
               const Strategy& x_pivot, const DgfSpec& spec = {});
// Same divergence with the pivot given as local log-probabilities.
double BregmanFromLog(const Tfsdp& tfsdp, const Strategy& x_new,
                      const Behavioral& log_pivot, const DgfSpec& spec = {});

// phi(x_new) - phi(x_pivot) - <grad phi(x_pivot), x_new - x_pivot>, with
// the directional derivative taken by central differences along the
// segment. Diagnostic only.
double BregmanDefinitional(const Tfsdp& tfsdp, const Strategy& x_new,
                           const Strategy& x_pivot, const DgfSpec& spec = {});

struct ProxResult {
  Strategy strategy;
  // Optimal value of <g, q> - D(q || pivot), the log-partition at the root.
  double root_value = 0.0;
  Behavioral behavioral;
  Behavioral log_behavioral;
};

// argmax over q in Q of <g, q> - D(q || pivot) for the weight-one dilated
// entropy. The learning rate is folded into g by the caller. Throws
// std::invalid_argument on a non-interior pivot or non-finite g.
ProxResult Prox(const Tfsdp& tfsdp, std::span<const double> g,
                const Strategy& pivot);
// Same, with the pivot as local log-probabilities (-inf entries allowed
// only when the caller accepts a non-interior result).
ProxResult ProxFromLog(const Tfsdp& tfsdp, std::span<const double> g,
                       const Behavioral& log_pivot);

// <g, q> - D(q || pivot).
double ProxObjective(const Tfsdp& tfsdp, std::span<const double> g,
                     const Strategy& q, const Strategy& pivot);

// D(x2 || x) - 0.5 * ||x2 - x||_{H,1}^2.
double StrongConvexityMargin(const Tfsdp& tfsdp, const Strategy& x,
                             const Strategy& x2);

}  // namespace treeplex

#endif  // TREEPLEX_DILENT_H_
