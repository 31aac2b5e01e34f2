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

#include "treeplex/sampling.h"

#include <algorithm>

namespace treeplex {
namespace {

std::vector<double> RandomSimplexPoint(std::size_t k, Rng& rng, double sparsity) {
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution drop(sparsity);
  std::uniform_int_distribution<std::size_t> keeper(0, k - 1);
  const std::size_t keep = keeper(rng);
  std::vector<double> p(k);
  double s = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    p[a] = (a != keep && sparsity > 0.0 && drop(rng)) ? 0.0 : expo(rng);
    s += p[a];
  }
  if (s <= 0.0) {
    std::fill(p.begin(), p.end(), 0.0);
    p[keep] = 1.0;
    return p;
  }
  for (double& v : p) v /= s;
  return p;
}

}  // namespace

Behavioral RandomBehavioral(const Tfsdp& tfsdp, Rng& rng, double sparsity) {
  Behavioral b(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    b[j] = RandomSimplexPoint(tfsdp.children(j).size(), rng, sparsity);
  }
  return b;
}

Strategy RandomStrategy(const Tfsdp& tfsdp, Rng& rng, double sparsity) {
  return BehavioralToSequence(tfsdp, RandomBehavioral(tfsdp, rng, sparsity));
}

Strategy RandomInteriorStrategy(const Tfsdp& tfsdp, Rng& rng, double floor) {
  auto b = RandomBehavioral(tfsdp, rng);
  for (int j : tfsdp.decisions()) {
    const double k = static_cast<double>(b[j].size());
    const double f = std::min(floor, 0.5 / k);
    for (double& p : b[j]) p = f + (1.0 - f * k) * p;
  }
  return BehavioralToSequence(tfsdp, b);
}

Kernel RandomKernel(const Tfsdp& tfsdp, Rng& rng) {
  std::vector<double> y(tfsdp.num_points(), 0.0);
  y[tfsdp.root()] = 1.0;
  for (int h = 0; h < tfsdp.num_points(); ++h) {
    const auto& ch = tfsdp.children(h);
    if (ch.empty()) continue;
    if (tfsdp.is_decision(h)) {
      for (int c : ch) y[c] = y[h];
    } else {
      const auto p = RandomSimplexPoint(ch.size(), rng, 0.0);
      for (std::size_t k = 0; k < ch.size(); ++k) y[ch[k]] = y[h] * p[k];
    }
  }
  Kernel out(tfsdp.num_terminals());
  for (int e = 0; e < tfsdp.num_terminals(); ++e) out[e] = y[tfsdp.terminal_point(e)];
  return out;
}

std::vector<double> RandomGaussian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

std::vector<double> RandomUniform(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace treeplex
