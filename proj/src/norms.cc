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

#include "treeplex/norms.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "treeplex/metrics.h"

namespace treeplex {
namespace {

void CheckSize(const Tfsdp& tfsdp, std::span<const double> u) {
  if (static_cast<int>(u.size()) != tfsdp.num_terminals()) {
    throw std::invalid_argument(
        "vector has " + std::to_string(u.size()) + " entries, expected " +
        std::to_string(tfsdp.num_terminals()));
  }
}

// `sum_at_decisions` selects the l1 recursion; the l-infinity recursion
// swaps the roles of the two point kinds.
double Recurse(const Tfsdp& tfsdp, std::span<const double> u,
               bool sum_at_decisions, NormWorkspace* workspace) {
  CheckSize(tfsdp, u);
  NormWorkspace local;
  auto& v = (workspace ? workspace : &local)->Get(tfsdp);
  for (int h : tfsdp.topo_order()) {
    if (tfsdp.is_terminal(h)) {
      v[h] = std::abs(u[tfsdp.terminal_index(h)]);
      continue;
    }
    const bool sum = tfsdp.is_decision(h) == sum_at_decisions;
    double acc = 0.0;
    for (int c : tfsdp.children(h)) acc = sum ? acc + v[c] : std::max(acc, v[c]);
    v[h] = acc;
  }
  return v[tfsdp.root()];
}

}  // namespace

double NormL1(const Tfsdp& tfsdp, std::span<const double> u,
              NormWorkspace* workspace) {
  return Recurse(tfsdp, u, true, workspace);
}

double NormLinf(const Tfsdp& tfsdp, std::span<const double> u,
                NormWorkspace* workspace) {
  return Recurse(tfsdp, u, false, workspace);
}

double NormOracle(const Tfsdp& tfsdp, std::span<const double> u, NormKind which,
                  std::size_t cap) {
  CheckSize(tfsdp, u);
  std::vector<double> a(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = std::abs(u[i]);
  double best = 0.0;
  if (which == NormKind::kL1) {
    for (const auto& y : EnumerateKernels(tfsdp, cap)) best = std::max(best, Dot(a, y));
  } else {
    for (const auto& x : EnumerateVertices(tfsdp, cap)) best = std::max(best, Dot(a, x));
  }
  return best;
}

std::vector<double> LinfCertificate(const Tfsdp& tfsdp,
                                    std::span<const double> u) {
  NormWorkspace ws;
  NormLinf(tfsdp, u, &ws);
  const auto& v = ws.Get(tfsdp);
  std::vector<double> out(tfsdp.num_terminals(), 0.0);
  std::vector<int> stack = {tfsdp.root()};
  while (!stack.empty()) {
    const int h = stack.back();
    stack.pop_back();
    if (tfsdp.is_terminal(h)) {
      const int e = tfsdp.terminal_index(h);
      out[e] = u[e] < 0 ? -1.0 : 1.0;
      continue;
    }
    const auto& ch = tfsdp.children(h);
    if (tfsdp.is_decision(h)) {
      int best = ch.front();
      for (int c : ch) {
        if (v[c] > v[best]) best = c;
      }
      stack.push_back(best);
    } else {
      stack.insert(stack.end(), ch.begin(), ch.end());
    }
  }
  return out;
}

}  // namespace treeplex
