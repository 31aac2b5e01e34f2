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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "treeplex/adversary.h"
#include "treeplex/clairvoyant.h"
#include "treeplex/dilent.h"
#include "treeplex/efg.h"
#include "treeplex/games.h"
#include "treeplex/metrics.h"
#include "treeplex/norms.h"
#include "treeplex/omd.h"
#include "treeplex/sampling.h"

namespace treeplex {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures and a short numeric summary.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_ < 5) detail_ << " [violated: " << what << "]";
    if (!ok) ++failures_;
  }
  void Note(const std::string& s) { detail_ << ' ' << s; }
  Outcome Done() const {
    Outcome o;
    o.pass = failures_ == 0;
    o.detail = detail_.str();
    if (failures_ > 0) o.detail += " failures=" + std::to_string(failures_);
    return o;
  }

 private:
  int failures_ = 0;
  std::ostringstream detail_;
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> Diff(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

int DecisionDepth(const Tfsdp& t) {
  std::vector<int> depth(t.num_points(), 0);
  int best = 0;
  for (int h = 0; h < t.num_points(); ++h) {
    for (int c : t.children(h)) {
      depth[c] = depth[h] + (t.is_decision(c) ? 1 : 0);
      best = std::max(best, depth[c]);
    }
  }
  return best;
}

// First `count` random processes with at least two decision points and at
// most `max_vertices` reduced strategies.
std::vector<Tfsdp> RandomGames(int count, int max_vertices, int depth = 3) {
  std::vector<Tfsdp> out;
  for (std::uint64_t seed = 1; static_cast<int>(out.size()) < count; ++seed) {
    Tfsdp t = RandomTfsdp(depth, 3, 2, seed);
    if (t.num_decisions() >= 2 && VertexCount(t) <= max_vertices) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Tfsdp> KuhnProcesses() {
  const SequenceFormGame g(KuhnPoker(2));
  return {g.tfsdp(0), g.tfsdp(1)};
}

// The depth-3 game of the lower-bound sweep: first seed whose realized
// decision depth is 3.
Tfsdp DepthThreeGame() {
  for (std::uint64_t seed = 1;; ++seed) {
    Tfsdp t = RandomTfsdp(3, 2, 2, seed);
    if (DecisionDepth(t) == 3) return t;
  }
}

// ------------------------------------------------------------- criteria

Outcome FigureOneMetrics() {
  Check c;
  const Tfsdp t = Fig1Tfsdp();
  c.Expect(TreeSize(t) == 4, "tree_size=4");
  c.Expect(LeafCount(t) == 2, "leaf_count=2");
  c.Expect(VertexCount(t) == 7, "vertices=7");
  c.Note("tree_size=" + std::to_string(TreeSize(t)) +
         " leaf_count=" + std::to_string(LeafCount(t)) +
         " vertices=" + VertexCount(t).str());
  return c.Done();
}

Outcome FigureTwoNormalization() {
  Check c;
  const Tfsdp t = Fig1Tfsdp();
  const auto n = NormalizeObservations(t);
  c.Expect(t.total_actions() == 9 && n.tfsdp.total_actions() == 8, "actions 9 -> 8");
  c.Expect(LeafCount(n.tfsdp) == 2, "leaf_count=2");
  c.Expect(VertexCount(n.tfsdp) == 7, "vertices=7");
  c.Expect(IsNormalized(n.tfsdp), "result normalized");
  c.Note("actions=" + std::to_string(t.total_actions()) + "->" +
         std::to_string(n.tfsdp.total_actions()) + " eliminated=" + std::to_string(n.eliminated));
  return c.Done();
}

Outcome NormRecursion() {
  Check c;
  Rng rng(101);
  double worst = 0.0;
  for (const Tfsdp& t : RandomGames(10, 200)) {
    for (int k = 0; k < 100; ++k) {
      const auto u = RandomGaussian(t.num_terminals(), rng);
      const double d1 = std::abs(NormL1(t, u) - NormOracle(t, u, NormKind::kL1));
      const double di = std::abs(NormLinf(t, u) - NormOracle(t, u, NormKind::kLinf));
      worst = std::max({worst, d1, di});
      c.Expect(d1 <= 1e-12 && di <= 1e-12, "recursion == enumeration");
    }
  }
  c.Note("max_delta=" + Num(worst));
  return c.Done();
}

Outcome NormDuality() {
  Check c;
  Rng rng(102);
  auto games = RandomGames(9, 100000, 4);
  games.push_back(Fig1Tfsdp());
  double worst_holder = -INFINITY, worst_cert = 0.0;
  for (const Tfsdp& t : games) {
    for (int k = 0; k < 1000; ++k) {
      const auto u = RandomGaussian(t.num_terminals(), rng);
      const auto v = RandomGaussian(t.num_terminals(), rng);
      const double dot = std::abs(Dot(u, v));
      const double h1 = dot - NormLinf(t, u) * NormL1(t, v);
      const double h2 = dot - NormL1(t, u) * NormLinf(t, v);
      worst_holder = std::max({worst_holder, h1, h2});
      c.Expect(h1 <= 1e-9 && h2 <= 1e-9, "Holder");
      const auto cert = LinfCertificate(t, u);
      const double gap = std::abs(Dot(u, cert) - NormLinf(t, u));
      worst_cert = std::max({worst_cert, gap, std::abs(NormL1(t, cert) - 1.0)});
      c.Expect(gap <= 1e-9 && std::abs(NormL1(t, cert) - 1.0) <= 1e-9, "certificate attains");
    }
  }
  c.Note("pairs=" + std::to_string(games.size() * 1000) + " worst_holder_excess=" +
         Num(worst_holder) + " worst_certificate_gap=" + Num(worst_cert));
  return c.Done();
}

Outcome UnitNorms() {
  Check c;
  Rng rng(103);
  auto games = RandomGames(8, 100000, 4);
  games.push_back(Fig1Tfsdp());
  for (auto& t : KuhnProcesses()) games.push_back(t);
  double worst_x = 0.0, worst_y = 0.0, worst_w = -INFINITY;
  int strategies = 0, kernels = 0, rewards = 0;
  for (const Tfsdp& t : games) {
    for (int k = 0; k < 100; ++k) {
      const double nx = NormL1(t, RandomStrategy(t, rng, (k % 3) * 0.25));
      const double ny = NormLinf(t, RandomKernel(t, rng));
      worst_x = std::max(worst_x, std::abs(nx - 1.0));
      worst_y = std::max(worst_y, std::abs(ny - 1.0));
      c.Expect(std::abs(nx - 1.0) <= 1e-9, "strategy l1 = 1");
      c.Expect(std::abs(ny - 1.0) <= 1e-9, "kernel linf = 1");
      ++strategies;
      ++kernels;
    }
    // Adversary streams on the same processes.
    if (LeafCount(t) <= 64) {
      const auto inst = BuildHardInstance(t, 64, 7);
      for (int s = 1; s <= 64; ++s) {
        const double n = NormLinf(t, AdversaryStep(inst, s));
        worst_w = std::max(worst_w, n);
        c.Expect(n <= 1 + 1e-9, "hard reward linf <= 1");
        ++rewards;
      }
    }
    for (int s = 1; s <= 64; ++s) {
      const double n = NormLinf(t, RandomRewardStep(t, 7, s));
      worst_w = std::max(worst_w, n);
      c.Expect(n <= 1 + 1e-9, "random reward linf <= 1");
      ++rewards;
    }
  }
  for (const Efg& efg : {KuhnPoker(2), KuhnPoker(3), MatchingPennies(), RandomEfg(3, 3, 1)}) {
    const SequenceFormGame g(efg);
    for (int k = 0; k < 100; ++k) {
      JointPolicy joint;
      for (int i = 0; i < g.num_players(); ++i) {
        joint.push_back(RandomStrategy(g.tfsdp(i), rng, (k % 2) * 0.4));
      }
      for (int i = 0; i < g.num_players(); ++i) {
        const double n = NormLinf(g.tfsdp(i), g.Reward(joint, i));
        worst_w = std::max(worst_w, n);
        c.Expect(n <= 1 + 1e-9, "game reward linf <= 1");
        ++rewards;
      }
    }
  }
  c.Note("strategies=" + std::to_string(strategies) + " kernels=" + std::to_string(kernels) +
         " rewards=" + std::to_string(rewards) + " worst_|x|-1=" + Num(worst_x) +
         " worst_|y|-1=" + Num(worst_y) + " max_|w|=" + Num(worst_w));
  return c.Done();
}

Outcome StrongConvexity() {
  Check c;
  Rng rng(104);
  auto games = RandomGames(10, 100000, 4);
  games.push_back(Fig1Tfsdp());
  for (auto& t : KuhnProcesses()) games.push_back(t);
  double worst = INFINITY;
  for (const Tfsdp& t : games) {
    for (int k = 0; k < 1000; ++k) {
      const Strategy x = RandomInteriorStrategy(t, rng);
      const Strategy y = RandomInteriorStrategy(t, rng);
      const double m = StrongConvexityMargin(t, x, y);
      worst = std::min(worst, m);
      c.Expect(m >= -1e-9, "margin >= 0");
    }
  }
  c.Note("games=" + std::to_string(games.size()) + " worst_margin=" + Num(worst));
  return c.Done();
}

Outcome Diameter() {
  Check c;
  auto games = RandomGames(10, 20000);
  games.insert(games.begin(), Fig1Tfsdp());
  for (const Tfsdp& t : games) {
    const Strategy center = DgfMinimizer(t);
    double worst = -INFINITY;
    for (const auto& v : EnumerateVertices(t, 20000)) {
      worst = std::max(worst, Bregman(t, v, center));
    }
    const double lnv = LogVertexCount(t);
    c.Expect(worst >= lnv - 1e-4 && worst <= lnv + 1e-6, "max D in [ln|V|-1e-4, ln|V|+1e-6]");
    if (&t == &games.front()) {
      c.Expect(std::abs(worst - std::log(7.0)) <= 1e-6, "fig1 diameter ln 7");
      c.Note("fig1_diameter=" + Num(worst));
    }
  }
  c.Note("games=" + std::to_string(games.size()));
  return c.Done();
}

Outcome DilEntRange() {
  Check c;
  Rng rng(105);
  auto games = RandomGames(10, 100000, 4);
  games.push_back(Fig1Tfsdp());
  for (auto& t : KuhnProcesses()) games.push_back(t);
  double worst_min = 0.0;
  int points = 0;
  for (const Tfsdp& t : games) {
    const double lnv = LogVertexCount(t);
    const double at_min = DilEntValue(t, DgfMinimizer(t));
    worst_min = std::max(worst_min, std::abs(at_min + lnv));
    c.Expect(std::abs(at_min + lnv) <= 1e-9, "phi(minimizer) = -ln|V|");
    for (int k = 0; k < 200; ++k) {
      const double v = DilEntValue(t, RandomStrategy(t, rng, (k % 4) * 0.25));
      c.Expect(v >= -lnv - 1e-9 && v <= 1e-12, "-ln|V| <= phi <= 0");
      ++points;
    }
    if (VertexCount(t) <= 2000) {
      for (const auto& x : EnumerateVertices(t)) {
        const double v = DilEntValue(t, x);
        c.Expect(std::abs(v) <= 1e-12, "phi(vertex) = 0");
        ++points;
      }
    }
  }
  c.Note("points=" + std::to_string(points) + " worst_minimizer_delta=" + Num(worst_min));
  return c.Done();
}

Outcome ProxCorrectness() {
  Check c;
  Rng rng(106);
  std::normal_distribution<double> scale(0.0, 5.0);
  auto games = RandomGames(3, 300);
  games.push_back(Fig1Tfsdp());
  games.push_back(KuhnProcesses()[0]);
  double worst_gap = -INFINITY, worst_lip = -INFINITY;
  for (const Tfsdp& t : games) {
    const auto vertices = EnumerateVertices(t);
    for (int k = 0; k < 1000; ++k) {
      const Strategy pivot = RandomInteriorStrategy(t, rng);
      auto g = RandomGaussian(t.num_terminals(), rng);
      const double s = scale(rng);
      for (double& v : g) v *= s;
      const auto r = Prox(t, g, pivot);
      const double f = ProxObjective(t, g, r.strategy, pivot);
      auto consider = [&](const Strategy& q) {
        const double gap = ProxObjective(t, g, q, pivot) - f;
        worst_gap = std::max(worst_gap, gap);
        c.Expect(gap <= 1e-7, "concave-gap certificate");
      };
      for (const auto& v : vertices) {
        consider(v);
        Strategy mid(v.size());
        for (std::size_t e = 0; e < v.size(); ++e) mid[e] = 0.5 * (v[e] + r.strategy[e]);
        consider(mid);
      }
      for (int q = 0; q < 5; ++q) consider(RandomStrategy(t, rng, 0.2));

      auto g1 = RandomGaussian(t.num_terminals(), rng);
      auto g2 = RandomGaussian(t.num_terminals(), rng);
      for (double& v : g1) v *= s;
      for (double& v : g2) v *= s;
      const auto x1 = Prox(t, g1, pivot).strategy, x2 = Prox(t, g2, pivot).strategy;
      const double excess = NormL1(t, Diff(x1, x2)) - NormLinf(t, Diff(g1, g2));
      worst_lip = std::max(worst_lip, excess);
      c.Expect(excess <= 1e-7, "non-expansive");
    }
  }
  c.Note("games=" + std::to_string(games.size()) + " worst_gap=" + Num(worst_gap) +
         " worst_nonexpansive_excess=" + Num(worst_lip));
  return c.Done();
}

Outcome RegretUpperBound() {
  Check c;
  std::vector<Tfsdp> games = {SimplexTfsdp(2), SimplexTfsdp(8), Fig1Tfsdp(), DepthThreeGame()};
  for (auto& t : KuhnProcesses()) games.push_back(t);
  double worst_ratio = 0.0;
  int streams = 0;
  for (std::int64_t horizon : {256, 1024, 4096}) {
    for (const Tfsdp& t : games) {
      const double bound = RegretBound(t, horizon);
      for (AdversaryKind kind : {AdversaryKind::kHard, AdversaryKind::kRandom}) {
        if (kind == AdversaryKind::kHard && horizon < LeafCount(t)) continue;
        AdversaryConfig adv;
        adv.kind = kind;
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
          const double r = RunMatch(t, {}, adv, horizon, seed).regret_curve.back();
          worst_ratio = std::max(worst_ratio, r / bound);
          c.Expect(r <= bound, "regret <= sqrt(2 ln|V| T)");
          ++streams;
        }
      }
    }
    // Self-play has no randomness; seeds would repeat one run.
    for (const Efg& efg : {KuhnPoker(2), KuhnPoker(3)}) {
      const SequenceFormGame g(efg);
      const auto sp = RunSelfPlay(g, {}, horizon);
      for (int i = 0; i < g.num_players(); ++i) {
        const double bound = RegretBound(g.tfsdp(i), horizon);
        worst_ratio = std::max(worst_ratio, sp.regret_curve[i].back() / bound);
        c.Expect(sp.regret_curve[i].back() <= bound, "self-play regret bound");
        ++streams;
      }
    }
  }
  c.Note("streams=" + std::to_string(streams) + " max_regret/bound=" + Num(worst_ratio));
  return c.Done();
}

Outcome RegretLowerBound() {
  Check c;
  struct Named {
    std::string name;
    Tfsdp t;
  };
  const std::vector<Named> games = {{"simplex2", SimplexTfsdp(2)},
                                    {"simplex8", SimplexTfsdp(8)},
                                    {"fig1", Fig1Tfsdp()},
                                    {"depth3", DepthThreeGame()}};
  std::vector<double> horizons;
  for (int k = 0; k <= 12; ++k) horizons.push_back(std::round(64.0 * std::pow(2.0, k / 2.0)));
  for (const auto& [name, t] : games) {
    std::vector<double> means;
    for (double h : horizons) {
      const auto horizon = static_cast<std::int64_t>(h);
      double mean = 0.0;
      for (std::uint64_t seed = 0; seed < 32; ++seed) {
        mean += RunMatch(t, {}, {}, horizon, seed).regret_curve.back() / 32.0;
      }
      means.push_back(mean);
    }
    const double at4096 = means.back();
    const double floor =
        0.1 * std::sqrt(LeafCount(t) * std::log(static_cast<double>(t.min_actions())) * 4096.0);
    const double slope = EmpiricalRateFit(horizons, means).slope;
    c.Expect(at4096 >= floor, name + " mean >= floor");
    c.Expect(at4096 <= RegretBound(t, 4096), name + " mean <= upper bound");
    c.Expect(slope >= 0.42 && slope <= 0.58, name + " slope in [0.42, 0.58]");
    c.Note(name + ":mean=" + Num(at4096) + ",floor=" + Num(floor) + ",slope=" + Num(slope));
  }
  return c.Done();
}

std::vector<std::pair<std::string, Efg>> CceGames() {
  return {{"kuhn", KuhnPoker(2)}, {"toy3", RandomEfg(3, 3, 1)}};
}

Outcome Contraction() {
  Check c;
  double worst = -INFINITY;
  int runs = 0;
  std::vector<std::pair<std::string, Efg>> games = CceGames();
  games.push_back({"pennies", MatchingPennies()});
  games.push_back({"kuhn3", KuhnPoker(3)});
  for (const auto& [name, efg] : games) {
    const SequenceFormGame g(efg);
    for (int inner : {-1, 12}) {
      ClairvoyantConfig cfg;
      cfg.episodes = 128;
      cfg.inner_steps = inner;
      cfg.keep_profiles = false;
      const auto log = ClairvoyantRun(g, cfg);
      c.Expect(std::abs(log.eta - 1.0 / (2 * g.num_players())) <= 1e-15, "eta = 1/(2n)");
      for (int t = 0; t < log.episodes; ++t) {
        for (int l = 1; l <= log.inner_steps; ++l) {
          for (int i = 0; i < log.num_players; ++i) {
            const double excess = log.Residual(t, l, i) - std::pow(2.0, 2 - l);
            worst = std::max(worst, excess);
            c.Expect(excess <= 1e-9, name + " residual <= 2^(2-l)");
          }
        }
      }
      ++runs;
    }
  }
  c.Note("runs=" + std::to_string(runs) + " worst_excess=" + Num(worst));
  return c.Done();
}

Outcome CceRate() {
  Check c;
  const std::vector<int> ks = {128, 256, 512, 1024, 2048};
  for (const auto& [name, efg] : CceGames()) {
    const SequenceFormGame g(efg);
    const int n = g.num_players();
    double lnv = 0.0;
    for (int i = 0; i < n; ++i) lnv = std::max(lnv, LogVertexCount(g.tfsdp(i)));
    std::vector<double> lx, ly;
    double gap1024 = 0.0;
    std::string series;
    for (int k : ks) {
      ClairvoyantConfig cfg;
      cfg.episodes = k;
      const double gap = ComputeCceGap(g, ClairvoyantRun(g, cfg)).max_gap;
      c.Expect(gap > 0.0, name + " gap positive");
      lx.push_back(std::log(static_cast<double>(k)));
      ly.push_back(std::log(std::max(gap, 1e-300)));
      if (k == 1024) gap1024 = gap;
      series += (series.empty() ? "" : "/") + Num(gap);
    }
    // Least squares over all five points.
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxy += (lx[k] - mx) * (ly[k] - my);
      sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    const double slope = sxy / sxx;
    const double bound = 8.0 * n * lnv / 1024.0;
    c.Expect(slope >= -1.2 && slope <= -0.8, name + " slope in [-1.2, -0.8]");
    c.Expect(gap1024 <= bound, name + " gap(1024) <= 8 n ln|V| / 1024");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", slope);
    c.Note(name + ":slope=" + buf + ",gap1024=" + Num(gap1024) + ",bound=" + Num(bound) +
           ",gaps=" + series);
  }
  return c.Done();
}

Outcome Lipschitz() {
  Check c;
  Rng rng(114);
  double worst = -INFINITY;
  for (const Efg& efg : {KuhnPoker(2), KuhnPoker(3), MatchingPennies(), RandomEfg(3, 3, 1)}) {
    const SequenceFormGame g(efg);
    const int n = g.num_players();
    for (int trial = 0; trial < 10000; ++trial) {
      JointPolicy a, b;
      for (int i = 0; i < n; ++i) {
        const double sparsity = (trial % 3) * 0.25;
        a.push_back(RandomStrategy(g.tfsdp(i), rng, sparsity));
        b.push_back(RandomStrategy(g.tfsdp(i), rng, sparsity));
      }
      std::vector<double> dist(n);
      for (int j = 0; j < n; ++j) dist[j] = NormL1(g.tfsdp(j), Diff(a[j], b[j]));
      for (int i = 0; i < n; ++i) {
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j != i) total += dist[j];
        }
        const double lhs = NormLinf(g.tfsdp(i), Diff(g.Reward(a, i), g.Reward(b, i)));
        worst = std::max(worst, lhs - total);
        c.Expect(lhs <= total + 1e-9, "reward Lipschitz");
      }
    }
  }
  c.Note("worst_excess=" + Num(worst));
  return c.Done();
}

Outcome VertexChain() {
  Check c;
  int found = 0;
  for (std::uint64_t seed = 1; found < 20; ++seed) {
    const Tfsdp t = NormalizeObservations(RandomTfsdp(3, 3, 3, seed)).tfsdp;
    if (t.num_decisions() < 2) continue;
    ++found;
    const BigInt v = VertexCount(t);
    const BigInt cap = boost::multiprecision::pow(BigInt(t.max_actions()),
                                                  static_cast<unsigned>(TreeSize(t)));
    c.Expect(IsNormalized(t), "normalized");
    c.Expect(v <= cap, "|V| <= |A|^||Q||_1");
    c.Expect(TreeSize(t) <= 2 * LeafCount(t), "||Q||_1 <= 2 ||Q||_perp");
  }
  c.Note("processes=" + std::to_string(found));
  return c.Done();
}

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "fig1 metrics", 1, FigureOneMetrics},
      {2, "fig1 normalization", 1, FigureTwoNormalization},
      {3, "norm recursion equals enumeration", 0, NormRecursion},
      {4, "norm duality", 0, NormDuality},
      {5, "unit norms", 0, UnitNorms},
      {6, "strong convexity", 30, StrongConvexity},
      {7, "diameter", 0, Diameter},
      {8, "dilated entropy range", 0, DilEntRange},
      {9, "prox correctness", 0, ProxCorrectness},
      {10, "regret upper bound", 300, RegretUpperBound},
      {11, "regret lower bound", 0, RegretLowerBound},
      {12, "fixed-point contraction", 0, Contraction},
      {13, "CCE rate", 600, CceRate},
      {14, "reward Lipschitz", 0, Lipschitz},
      {15, "vertex count chain", 0, VertexChain},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string(" exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit > 0 && secs > cr.time_limit) {
      o.pass = false;
      o.detail += " over time limit " + Num(cr.time_limit) + "s";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s (%.2fs)%s\n", o.pass ? "PASS" : "FAIL", cr.id,
                cr.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace treeplex

int main() { return treeplex::Main(); }
