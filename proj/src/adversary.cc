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

#include "treeplex/adversary.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "treeplex/metrics.h"

namespace treeplex {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t KeyedHash(std::uint64_t seed, std::uint64_t episode,
                        std::uint64_t index) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ episode) ^ index);
}

bool KeyedCoin(std::uint64_t seed, std::uint64_t episode, std::uint64_t index) {
  return (KeyedHash(seed, episode, index) >> 63) != 0;
}

double KeyedUniform(std::uint64_t seed, std::uint64_t episode,
                    std::uint64_t index) {
  return static_cast<double>(KeyedHash(seed, episode, index) >> 11) * 0x1.0p-53;
}

namespace {

class PlanBuilder {
 public:
  PlanBuilder(const Tfsdp& tfsdp, HardInstance& out)
      : t_(tfsdp), out_(out), width_(ComputeMetrics(tfsdp).leaf_count) {}

  void Observation(int sigma, std::int64_t start, std::int64_t length) {
    const auto& ch = t_.children(sigma);
    if (ch.empty()) return;
    out_.plan[sigma] = PlanKind::kSplit;
    out_.first_episode[sigma] = start;
    // Largest-remainder apportionment of length by child width.
    const std::int64_t total = width_[sigma];
    std::vector<std::int64_t> size(ch.size());
    std::vector<std::int64_t> rem(ch.size());
    std::int64_t assigned = 0;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      size[k] = length * width_[ch[k]] / total;
      rem[k] = length * width_[ch[k]] % total;
      assigned += size[k];
    }
    std::vector<std::size_t> order(ch.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t k = 0; assigned < length; ++k, ++assigned) ++size[order[k]];
    out_.blocks[sigma] = size;
    std::int64_t at = start;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      Decision(ch[k], at, size[k]);
      at += size[k];
    }
  }

  void Decision(int j, std::int64_t start, std::int64_t length) {
    const auto& ch = t_.children(j);
    out_.first_episode[j] = start;
    const bool all_terminal = std::all_of(
        ch.begin(), ch.end(), [&](int c) { return t_.is_terminal(c); });
    if (all_terminal) {
      out_.plan[j] = PlanKind::kBandit;
      for (std::int64_t e = start; e < start + length; ++e) out_.episode_bandit[e] = j;
      return;
    }
    // Widest action; non-terminal actions win ties, then the lowest index.
    int best = -1;
    for (int c : ch) {
      if (best < 0 || width_[c] > width_[best] ||
          (width_[c] == width_[best] && t_.is_terminal(best) && !t_.is_terminal(c))) {
        best = c;
      }
    }
    out_.plan[j] = PlanKind::kRoute;
    out_.route[j] = best;
    Observation(best, start, length);
  }

 private:
  const Tfsdp& t_;
  HardInstance& out_;
  std::vector<std::int64_t> width_;
};

}  // namespace

HardInstance BuildHardInstance(const Tfsdp& tfsdp, std::int64_t horizon,
                               std::uint64_t seed) {
  const auto leaves = LeafCount(tfsdp);
  if (horizon < leaves) {
    throw std::invalid_argument("hard instance: horizon " + std::to_string(horizon) +
                                " below leaf count " + std::to_string(leaves));
  }
  HardInstance inst;
  inst.tfsdp = &tfsdp;
  inst.horizon = horizon;
  inst.seed = seed;
  const int n = tfsdp.num_points();
  inst.plan.assign(n, PlanKind::kNone);
  inst.route.assign(n, -1);
  inst.blocks.assign(n, {});
  inst.first_episode.assign(n, -1);
  // Episodes stay -1 only for a process without decision points.
  inst.episode_bandit.assign(horizon, -1);
  PlanBuilder(tfsdp, inst).Observation(tfsdp.root(), 0, horizon);
  return inst;
}

std::string DescribePlan(const HardInstance& inst) {
  const Tfsdp& t = *inst.tfsdp;
  std::ostringstream os;
  for (int h = 0; h < t.num_points(); ++h) {
    switch (inst.plan[h]) {
      case PlanKind::kNone:
        continue;
      case PlanKind::kBandit:
        os << t.label(h) << " bandit";
        for (const auto& a : t.point(h).actions) os << ' ' << a;
        break;
      case PlanKind::kRoute: {
        const auto& ch = t.children(h);
        const auto a = std::find(ch.begin(), ch.end(), inst.route[h]) - ch.begin();
        os << t.label(h) << " route " << t.point(h).actions[a];
        break;
      }
      case PlanKind::kSplit: {
        os << t.SequenceName(h) << " split";
        const auto& ch = t.children(h);
        for (std::size_t k = 0; k < ch.size(); ++k) {
          os << ' ' << t.label(ch[k]) << '=' << inst.blocks[h][k];
        }
        break;
      }
    }
    os << '\n';
  }
  return os.str();
}

RewardVector AdversaryStep(const HardInstance& inst, std::int64_t t) {
  if (t < 1 || t > inst.horizon) {
    throw std::out_of_range("adversary step: episode " + std::to_string(t) +
                            " outside [1, " + std::to_string(inst.horizon) + "]");
  }
  const Tfsdp& tfsdp = *inst.tfsdp;
  RewardVector w(tfsdp.num_terminals());
  const int j = inst.episode_bandit[t - 1];
  if (j < 0) return w;
  for (int c : tfsdp.children(j)) {
    const int e = tfsdp.terminal_index(c);
    w[e] = KeyedCoin(inst.seed, static_cast<std::uint64_t>(t), e) ? 1.0 : 0.0;
  }
  return w;
}

RewardVector RandomRewardStep(const Tfsdp& tfsdp, std::uint64_t seed,
                              std::int64_t t) {
  const auto episode = static_cast<std::uint64_t>(t);
  // Index space: points for the kernel split, then terminals for r.
  std::vector<double> y(tfsdp.num_points(), 0.0);
  y[tfsdp.root()] = 1.0;
  for (int h = 0; h < tfsdp.num_points(); ++h) {
    const auto& ch = tfsdp.children(h);
    if (ch.empty()) continue;
    if (tfsdp.is_decision(h)) {
      for (int c : ch) y[c] = y[h];
      continue;
    }
    double s = 0.0;
    std::vector<double> p(ch.size());
    for (std::size_t k = 0; k < ch.size(); ++k) {
      p[k] = KeyedUniform(seed, episode, static_cast<std::uint64_t>(ch[k])) + 1e-3;
      s += p[k];
    }
    for (std::size_t k = 0; k < ch.size(); ++k) y[ch[k]] = y[h] * p[k] / s;
  }
  RewardVector w(tfsdp.num_terminals());
  const auto offset = static_cast<std::uint64_t>(tfsdp.num_points());
  for (int e = 0; e < tfsdp.num_terminals(); ++e) {
    w[e] = KeyedUniform(seed, episode, offset + e) * y[tfsdp.terminal_point(e)];
  }
  return w;
}

MatchResult RunMatch(const Tfsdp& tfsdp, const LearnerConfig& learner,
                     const AdversaryConfig& adversary, std::int64_t horizon,
                     std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("match: horizon must be >= 1");
  if (adversary.kind == AdversaryKind::kReplay && adversary.replay.empty()) {
    throw std::invalid_argument("match: replay adversary has no vectors");
  }
  HardInstance inst;
  if (adversary.kind == AdversaryKind::kHard) {
    inst = BuildHardInstance(tfsdp, horizon, seed);
  }
  MatchResult out;
  out.eta = learner.eta > 0.0 ? learner.eta : TunedEta(tfsdp, horizon);
  auto state = OmdInit(tfsdp, out.eta);
  out.regret_curve.reserve(horizon);
  out.reward_curve.reserve(horizon);
  RewardVector previous;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const Strategy& x = learner.optimistic && t > 1
                            ? OmdPredict(state, previous)
                            : OmdPredict(state);
    RewardVector w;
    switch (adversary.kind) {
      case AdversaryKind::kHard:
        w = AdversaryStep(inst, t);
        break;
      case AdversaryKind::kRandom:
        w = RandomRewardStep(tfsdp, seed, t);
        break;
      case AdversaryKind::kZero:
        w = RewardVector(tfsdp.num_terminals());
        break;
      case AdversaryKind::kReplay:
        w = adversary.replay[(t - 1) % adversary.replay.size()];
        break;
    }
    out.reward_curve.push_back(Dot(x, w));
    OmdUpdate(state, w);
    out.regret_curve.push_back(CumulativeRegret(state));
    previous = std::move(w);
  }
  out.bound = EvaluatePredictiveBound(state);
  return out;
}

SelfPlayResult RunSelfPlay(const SequenceFormGame& game,
                           const LearnerConfig& learner, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("self-play: horizon must be >= 1");
  const int n = game.num_players();
  SelfPlayResult out;
  std::vector<LearnerState> states;
  states.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.eta.push_back(learner.eta > 0.0 ? learner.eta : TunedEta(game.tfsdp(i), horizon));
    states.push_back(OmdInit(game.tfsdp(i), out.eta.back()));
  }
  out.regret_curve.assign(n, {});
  std::vector<RewardVector> previous;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    JointPolicy joint(n);
    for (int i = 0; i < n; ++i) {
      joint[i] = learner.optimistic && t > 1 ? OmdPredict(states[i], previous[i])
                                             : OmdPredict(states[i]);
    }
    std::vector<RewardVector> w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = game.Reward(joint, i);
      OmdUpdate(states[i], w[i]);
      out.regret_curve[i].push_back(CumulativeRegret(states[i]));
    }
    previous = std::move(w);
  }
  return out;
}

RateFit EmpiricalRateFit(const std::vector<double>& x,
                         const std::vector<double>& values) {
  if (x.size() != values.size()) throw std::invalid_argument("rate fit: size mismatch");
  if (values.size() < 8) throw std::invalid_argument("rate fit: need >= 8 points");
  const std::size_t start = values.size() / 2;
  const double m = static_cast<double>(values.size() - start);
  double sx = 0, sy = 0;
  for (std::size_t k = start; k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !(x[k] > 0.0)) {
      throw std::invalid_argument("rate fit: values must be positive");
    }
    sx += std::log(x[k]);
    sy += std::log(values[k]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = start; k < values.size(); ++k) {
    const double dx = std::log(x[k]) - mx, dy = std::log(values[k]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("rate fit: degenerate x range");
  RateFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

RateFit EmpiricalRateFit(const std::vector<double>& curve) {
  std::vector<double> x(curve.size());
  std::iota(x.begin(), x.end(), 1.0);
  return EmpiricalRateFit(x, curve);
}

}  // namespace treeplex
