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

#include "treeplex/dilent.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "treeplex/metrics.h"
#include "treeplex/norms.h"

namespace treeplex {
namespace {

std::vector<double> StrategyExtension(const Tfsdp& tfsdp, const Strategy& x,
                                      const char* what) {
  if (!ValidateMembership(tfsdp, x, Space::kStrategy)) {
    throw std::invalid_argument(std::string(what) + ": not a valid strategy");
  }
  return Extend(tfsdp, x, Space::kStrategy).values;
}

double XLogRatio(double num, double den) {
  if (num <= 0.0) return 0.0;
  return num * std::log(num / den);
}

void CheckFinite(std::span<const double> g) {
  for (double v : g) {
    if (!std::isfinite(v)) throw std::invalid_argument("prox: non-finite gradient");
  }
}

}  // namespace

void ValidateSpec(const Tfsdp& tfsdp, const DgfSpec& spec) {
  if (spec.unit()) return;
  if (static_cast<int>(spec.weights.size()) != tfsdp.num_points()) {
    throw std::invalid_argument("dgf spec: one weight per point expected");
  }
  for (int j : tfsdp.decisions()) {
    if (!(spec.weights[j] > 0.0)) {
      throw std::invalid_argument("dgf spec: weights must be positive");
    }
  }
}

double DilEntValue(const Tfsdp& tfsdp, const Strategy& x, const DgfSpec& spec) {
  ValidateSpec(tfsdp, spec);
  const auto ext = StrategyExtension(tfsdp, x, "dilent value");
  double total = 0.0;
  for (int j : tfsdp.decisions()) {
    double local = 0.0;
    for (int c : tfsdp.children(j)) local += XLogRatio(ext[c], ext[j]);
    total += spec.weight(j) * local;
  }
  return total;
}

Behavioral MinimizerLogBehavioral(const Tfsdp& tfsdp) {
  const auto m = ComputeMetrics(tfsdp);
  Behavioral lb(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    for (int c : tfsdp.children(j)) {
      lb[j].push_back(m.log_vertex_count[c] - m.log_vertex_count[j]);
    }
  }
  return lb;
}

namespace {

Behavioral Exponentiate(const Tfsdp& tfsdp, const Behavioral& lb) {
  Behavioral b(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    double s = 0.0;
    for (double l : lb[j]) {
      b[j].push_back(std::exp(l));
      s += b[j].back();
    }
    for (double& p : b[j]) p /= s;
  }
  return b;
}

}  // namespace

Strategy DgfMinimizer(const Tfsdp& tfsdp) {
  return BehavioralToSequence(tfsdp, Exponentiate(tfsdp, MinimizerLogBehavioral(tfsdp)));
}

Behavioral InteriorLogBehavioral(const Tfsdp& tfsdp, const Strategy& pivot) {
  const auto ext = StrategyExtension(tfsdp, pivot, "pivot");
  Behavioral lb(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    for (int c : tfsdp.children(j)) {
      const double b = ext[j] > 0.0 ? ext[c] / ext[j] : 0.0;
      if (!(b >= kInteriorFloor)) {
        throw std::invalid_argument("pivot is not interior");
      }
      lb[j].push_back(std::log(b));
    }
  }
  return lb;
}

double BregmanFromLog(const Tfsdp& tfsdp, const Strategy& x_new,
                      const Behavioral& log_pivot, const DgfSpec& spec) {
  ValidateSpec(tfsdp, spec);
  const auto ext = StrategyExtension(tfsdp, x_new, "bregman");
  double total = 0.0;
  for (int j : tfsdp.decisions()) {
    const auto& ch = tfsdp.children(j);
    double local = 0.0;
    for (std::size_t a = 0; a < ch.size(); ++a) {
      const double v = ext[ch[a]];
      if (v <= 0.0) continue;
      local += v * (std::log(v / ext[j]) - log_pivot[j][a]);
    }
    total += spec.weight(j) * local;
  }
  // Rounding can leave a tiny negative value at x_new == pivot.
  return std::max(total, 0.0);
}

double Bregman(const Tfsdp& tfsdp, const Strategy& x_new,
               const Strategy& x_pivot, const DgfSpec& spec) {
  return BregmanFromLog(tfsdp, x_new, InteriorLogBehavioral(tfsdp, x_pivot), spec);
}

double BregmanDefinitional(const Tfsdp& tfsdp, const Strategy& x_new,
                           const Strategy& x_pivot, const DgfSpec& spec) {
  InteriorLogBehavioral(tfsdp, x_pivot);
  const std::size_t n = x_pivot.size();
  double min_entry = 1.0;
  for (double v : x_pivot.values) min_entry = std::min(min_entry, v);
  // Both probes stay inside Q: the pivot is interior and the step is short.
  const double h = 1e-5 * min_entry;
  Strategy plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x_new[i] - x_pivot[i];
    plus[i] = x_pivot[i] + h * d;
    minus[i] = x_pivot[i] - h * d;
  }
  const double deriv =
      (DilEntValue(tfsdp, plus, spec) - DilEntValue(tfsdp, minus, spec)) / (2.0 * h);
  return DilEntValue(tfsdp, x_new, spec) - DilEntValue(tfsdp, x_pivot, spec) - deriv;
}

ProxResult ProxFromLog(const Tfsdp& tfsdp, std::span<const double> g,
                       const Behavioral& log_pivot) {
  if (static_cast<int>(g.size()) != tfsdp.num_terminals()) {
    throw std::invalid_argument("prox: gradient has wrong dimension");
  }
  CheckFinite(g);
  std::vector<double> value(tfsdp.num_points(), 0.0);
  ProxResult out;
  out.log_behavioral.resize(tfsdp.num_points());
  for (int h : tfsdp.topo_order()) {
    const auto& ch = tfsdp.children(h);
    if (tfsdp.is_terminal(h)) {
      value[h] = g[tfsdp.terminal_index(h)];
    } else if (!tfsdp.is_decision(h)) {
      double s = 0.0;
      for (int c : ch) s += value[c];
      value[h] = s;
    } else {
      auto& lb = out.log_behavioral[h];
      lb.resize(ch.size());
      double peak = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < ch.size(); ++a) {
        lb[a] = log_pivot[h][a] + value[ch[a]];
        peak = std::max(peak, lb[a]);
      }
      double s = 0.0;
      for (double l : lb) s += std::exp(l - peak);
      const double lse = peak + std::log(s);
      for (double& l : lb) l -= lse;
      value[h] = lse;
    }
  }
  out.root_value = value[tfsdp.root()];
  out.behavioral = Exponentiate(tfsdp, out.log_behavioral);
  out.strategy = BehavioralToSequence(tfsdp, out.behavioral);
  return out;
}

ProxResult Prox(const Tfsdp& tfsdp, std::span<const double> g,
                const Strategy& pivot) {
  if (static_cast<int>(g.size()) != tfsdp.num_terminals()) {
    throw std::invalid_argument("prox: gradient has wrong dimension");
  }
  CheckFinite(g);
  const auto log_pivot = InteriorLogBehavioral(tfsdp, pivot);
  if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) {
    ProxResult out;
    out.strategy = pivot;
    out.log_behavioral = log_pivot;
    out.behavioral = Exponentiate(tfsdp, log_pivot);
    return out;
  }
  return ProxFromLog(tfsdp, g, log_pivot);
}

double ProxObjective(const Tfsdp& tfsdp, std::span<const double> g,
                     const Strategy& q, const Strategy& pivot) {
  return Dot(g, q) - Bregman(tfsdp, q, pivot);
}

double StrongConvexityMargin(const Tfsdp& tfsdp, const Strategy& x,
                             const Strategy& x2) {
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x2[i] - x[i];
  const double n = NormL1(tfsdp, diff);
  return Bregman(tfsdp, x2, x) - 0.5 * n * n;
}

}  // namespace treeplex
