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

#ifndef TREEPLEX_SAMPLING_H_
#define TREEPLEX_SAMPLING_H_

#include <random>
#include <vector>

#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

using Rng = std::mt19937_64;

// Random local distributions. With sparsity > 0 each action is zeroed with
// that probability (one action always survives), giving boundary points.
Behavioral RandomBehavioral(const Tfsdp& tfsdp, Rng& rng, double sparsity = 0.0);
Strategy RandomStrategy(const Tfsdp& tfsdp, Rng& rng, double sparsity = 0.0);
// Strategy whose local probabilities are all at least `floor`.
Strategy RandomInteriorStrategy(const Tfsdp& tfsdp, Rng& rng,
                                double floor = 1e-3);
// Random transition kernel: mass split at observation points, copied at
// decision points.
Kernel RandomKernel(const Tfsdp& tfsdp, Rng& rng);
std::vector<double> RandomGaussian(std::size_t n, Rng& rng);
std::vector<double> RandomUniform(std::size_t n, Rng& rng);

}  // namespace treeplex

#endif  // TREEPLEX_SAMPLING_H_
