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

#include "treeplex/games.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeplex/metrics.h"

namespace treeplex {

Tfsdp Fig1Tfsdp() {
  TfsdpBuilder b;
  const int a = b.AddDecision(b.root(), "A");
  const int a1 = b.AddAction(a, "1");
  const int a2 = b.AddAction(a, "2");
  const int bp = b.AddDecision(a1, "B");
  b.AddAction(bp, "3");
  b.AddAction(bp, "4");
  const int cp = b.AddDecision(a1, "C");
  b.AddAction(cp, "5");
  b.AddAction(cp, "6");
  const int dp = b.AddDecision(a2, "D");
  b.AddAction(dp, "7");
  b.AddAction(dp, "8");
  b.AddAction(dp, "9");
  return b.Build();
}

Tfsdp Fig2NormalizedTfsdp() { return NormalizeObservations(Fig1Tfsdp()).tfsdp; }

Tfsdp SimplexTfsdp(int k) {
  if (k < 1) throw std::invalid_argument("simplex: k must be >= 1");
  TfsdpBuilder b;
  const int j = b.AddDecision(b.root(), "S");
  for (int a = 0; a < k; ++a) b.AddAction(j, std::to_string(a));
  return b.Build();
}

namespace {

// Bounded draw from the standardised mt19937_64 output sequence, so the
// generators below do not depend on the library's distribution classes.
int Draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double DrawUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Tfsdp RandomTfsdp(int depth, int dec_branch, int obs_branch,
                  std::uint64_t seed) {
  if (depth < 1) throw std::invalid_argument("random_tfsdp: depth must be >= 1");
  if (dec_branch < 1 || obs_branch < 1) {
    throw std::invalid_argument("random_tfsdp: branching must be >= 1");
  }
  std::mt19937_64 rng(seed);
  TfsdpBuilder b;
  int next_label = 0;
  struct Frame {
    int sequence;
    int level;  // level of the decision points to create below
  };
  std::vector<Frame> todo = {{b.root(), 1}};
  while (!todo.empty()) {
    const Frame f = todo.back();
    todo.pop_back();
    const int outcomes = Draw(rng, 1, obs_branch);
    for (int c = 0; c < outcomes; ++c) {
      const int j = b.AddDecision(f.sequence, "d" + std::to_string(next_label++));
      const int actions = Draw(rng, std::min(2, dec_branch), dec_branch);
      for (int a = 0; a < actions; ++a) {
        const int s = b.AddAction(j, std::to_string(a));
        if (f.level < depth && Draw(rng, 0, 2) != 0) {
          todo.push_back({s, f.level + 1});
        }
      }
    }
  }
  return b.Build();
}

Efg KuhnPoker(int players) {
  if (players < 2) throw std::invalid_argument("kuhn: need >= 2 players");
  const int cards = players + 1;
  static const char* kCardNames = "JQKA23456789";
  if (cards > 12) throw std::invalid_argument("kuhn: too many players");

  std::vector<EfgNode> nodes;
  auto add = [&](EfgNode n) {
    n.id = "n" + std::to_string(nodes.size());
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  };
  const double scale = 2.0 * players;

  // history: 'p' for pass/fold, 'b' for bet/call.
  auto build = [&](auto&& self, const std::vector<int>& deal,
                   const std::string& history) -> int {
    const int len = static_cast<int>(history.size());
    const auto first_bet = history.find('b');
    const bool done = first_bet == std::string::npos
                          ? len == players
                          : len == static_cast<int>(first_bet) + players;
    if (done) {
      EfgNode t;
      t.kind = NodeKind::kTerminal;
      std::vector<int> contribution(players, 1);
      std::vector<bool> in_showdown(players, first_bet == std::string::npos);
      for (int k = 0; k < len; ++k) {
        if (history[k] == 'b') {
          contribution[k % players] += 1;
          in_showdown[k % players] = true;
        }
      }
      int winner = -1;
      for (int i = 0; i < players; ++i) {
        if (in_showdown[i] && (winner < 0 || deal[i] > deal[winner])) winner = i;
      }
      const int pot = std::accumulate(contribution.begin(), contribution.end(), 0);
      for (int i = 0; i < players; ++i) {
        const double u = (i == winner ? pot : 0) - contribution[i];
        t.payoffs.push_back((u + 2.0) / scale);
      }
      return add(std::move(t));
    }
    const int actor = len % players;
    EfgNode d;
    d.kind = NodeKind::kDecision;
    d.player = actor;
    d.infoset = "p" + std::to_string(actor) + ":" + kCardNames[deal[actor]] +
                ":" + history;
    d.actions = {"p", "b"};
    const int id = add(std::move(d));
    const int pass = self(self, deal, history + "p");
    const int bet = self(self, deal, history + "b");
    nodes[id].children = {pass, bet};
    return id;
  };

  EfgNode root;
  root.kind = NodeKind::kChance;
  add(std::move(root));
  std::vector<int> perm(cards);
  std::iota(perm.begin(), perm.end(), 0);
  // Ordered deals of `players` distinct cards, in lexicographic order.
  std::vector<std::vector<int>> deals;
  std::vector<int> pick;
  auto rec = [&](auto&& self, std::vector<bool>& used) -> void {
    if (static_cast<int>(pick.size()) == players) {
      deals.push_back(pick);
      return;
    }
    for (int c = 0; c < cards; ++c) {
      if (used[c]) continue;
      used[c] = true;
      pick.push_back(c);
      self(self, used);
      pick.pop_back();
      used[c] = false;
    }
  };
  std::vector<bool> used(cards, false);
  rec(rec, used);
  std::vector<int> children;
  for (const auto& deal : deals) children.push_back(build(build, deal, ""));
  nodes[0].children = children;
  nodes[0].probs.assign(deals.size(), 1.0 / static_cast<double>(deals.size()));
  return Efg(players, std::move(nodes));
}

Efg MatchingPennies() {
  std::vector<EfgNode> nodes(7);
  nodes[0] = {"r", NodeKind::kDecision, 0, "P0", {"H", "T"}, {}, {1, 2}, {}};
  nodes[1] = {"h", NodeKind::kDecision, 1, "P1", {"H", "T"}, {}, {3, 4}, {}};
  nodes[2] = {"t", NodeKind::kDecision, 1, "P1", {"H", "T"}, {}, {5, 6}, {}};
  nodes[3] = {"hh", NodeKind::kTerminal, -1, "", {}, {}, {}, {1.0, 0.0}};
  nodes[4] = {"ht", NodeKind::kTerminal, -1, "", {}, {}, {}, {0.0, 1.0}};
  nodes[5] = {"th", NodeKind::kTerminal, -1, "", {}, {}, {}, {0.0, 1.0}};
  nodes[6] = {"tt", NodeKind::kTerminal, -1, "", {}, {}, {}, {1.0, 0.0}};
  return Efg(2, std::move(nodes));
}

namespace {

std::uint64_t Fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Efg RandomEfg(int players, int depth, std::uint64_t seed) {
  if (players < 1) throw std::invalid_argument("random_efg: players must be >= 1");
  if (depth < 1) throw std::invalid_argument("random_efg: depth must be >= 1");
  std::mt19937_64 rng(seed);
  // Level plan: -1 for chance, otherwise the acting player. Every player
  // acts at least once when depth allows it.
  std::vector<int> actor(depth);
  for (int l = 0; l < depth; ++l) {
    actor[l] = l < players ? l : (Draw(rng, 0, 3) == 0 ? -1 : Draw(rng, 0, players - 1));
  }
  std::shuffle(actor.begin(), actor.end(), rng);
  std::vector<int> chance_width(depth);
  // visible[l][i]: player i observes the outcome of level l.
  std::vector<std::vector<bool>> visible(depth, std::vector<bool>(players));
  for (int l = 0; l < depth; ++l) {
    chance_width[l] = Draw(rng, 2, 3);
    for (int i = 0; i < players; ++i) {
      visible[l][i] = actor[l] == i || Draw(rng, 0, 1) == 1;
    }
  }

  std::vector<EfgNode> nodes;
  auto add = [&](EfgNode n) {
    n.id = "n" + std::to_string(nodes.size());
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  };
  auto build = [&](auto&& self, int level, const std::vector<int>& path) -> int {
    if (level == depth) {
      EfgNode t;
      t.kind = NodeKind::kTerminal;
      for (int i = 0; i < players; ++i) t.payoffs.push_back(DrawUnit(rng));
      return add(std::move(t));
    }
    EfgNode n;
    int width = 0;
    if (actor[level] < 0) {
      n.kind = NodeKind::kChance;
      width = chance_width[level];
      double s = 0.0;
      for (int k = 0; k < width; ++k) {
        n.probs.push_back(0.25 + DrawUnit(rng));
        s += n.probs.back();
      }
      for (double& p : n.probs) p /= s;
      // Absorb rounding so the distribution sums to 1 to machine precision.
      double rest = 1.0;
      for (int k = 0; k + 1 < width; ++k) rest -= n.probs[k];
      n.probs.back() = rest;
    } else {
      const int i = actor[level];
      std::string view = "p" + std::to_string(i) + "|";
      for (int l = 0; l < level; ++l) {
        view += visible[l][i] ? std::to_string(path[l]) : std::string("?");
        view += '.';
      }
      n.kind = NodeKind::kDecision;
      n.player = i;
      n.infoset = view;
      width = 2 + static_cast<int>(Fnv1a(view, seed) % 2);
      for (int a = 0; a < width; ++a) n.actions.push_back("a" + std::to_string(a));
    }
    const int id = add(std::move(n));
    std::vector<int> children;
    for (int k = 0; k < width; ++k) {
      auto next = path;
      next.push_back(k);
      children.push_back(self(self, level + 1, next));
    }
    nodes[id].children = std::move(children);
    return id;
  };
  build(build, 0, {});
  return Efg(players, std::move(nodes));
}

namespace {

int IntParam(const std::map<std::string, std::string>& params,
             const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("missing parameter '" + key + "'");
  }
  long long v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("parameter '" + key + "' is not an integer");
  }
  return static_cast<int>(v);
}

std::uint64_t SeedParam(const std::map<std::string, std::string>& params) {
  auto it = params.find("seed");
  if (it == params.end()) throw std::invalid_argument("missing parameter 'seed'");
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("parameter 'seed' is not an integer");
  }
  return v;
}

const std::map<std::string, std::vector<std::string>>& ParamOrder() {
  static const auto* order = new std::map<std::string, std::vector<std::string>>{
      {"fig1", {}},
      {"fig2_normalized", {}},
      {"simplex", {"k"}},
      {"kuhn", {}},
      {"kuhn3", {}},
      {"matching_pennies", {}},
      {"random_tfsdp", {"depth", "dec_branch", "obs_branch", "seed"}},
      {"random_efg", {"players", "depth", "seed"}},
  };
  return *order;
}

}  // namespace

BuiltinResult BuiltinGame(std::string_view name,
                          const std::map<std::string, std::string>& params) {
  if (name == "fig1") return Fig1Tfsdp();
  if (name == "fig2_normalized") return Fig2NormalizedTfsdp();
  if (name == "simplex") return SimplexTfsdp(IntParam(params, "k"));
  if (name == "kuhn") return KuhnPoker(2);
  if (name == "kuhn3") return KuhnPoker(3);
  if (name == "matching_pennies") return MatchingPennies();
  if (name == "random_tfsdp") {
    return RandomTfsdp(IntParam(params, "depth"), IntParam(params, "dec_branch"),
                       IntParam(params, "obs_branch"), SeedParam(params));
  }
  if (name == "random_efg") {
    return RandomEfg(IntParam(params, "players"), IntParam(params, "depth"),
                     SeedParam(params));
  }
  throw std::invalid_argument("unknown builtin game '" + std::string(name) + "'");
}

BuiltinResult BuiltinFromSpec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const auto& order = ParamOrder();
  auto it = order.find(name);
  if (it == order.end()) {
    throw std::invalid_argument("unknown builtin game '" + name + "'");
  }
  std::map<std::string, std::string> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    std::size_t k = 0;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      if (k >= it->second.size()) {
        throw std::invalid_argument("too many parameters for '" + name + "'");
      }
      params[it->second[k++]] = std::string(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return BuiltinGame(name, params);
}

}  // namespace treeplex
