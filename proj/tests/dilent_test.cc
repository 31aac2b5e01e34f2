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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "treeplex/dilent.h"
#include "treeplex/games.h"
#include "treeplex/metrics.h"
#include "treeplex/norms.h"
#include "treeplex/sampling.h"

namespace treeplex {
namespace {

std::vector<Tfsdp> TestProcesses() {
  std::vector<Tfsdp> out = {Fig1Tfsdp(), SimplexTfsdp(3),
                            ExtractTfsdp(KuhnPoker(), 0).tfsdp};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) out.push_back(RandomTfsdp(3, 3, 2, seed));
  return out;
}

TEST_CASE("dilated entropy values") {
  const Tfsdp fig1 = Fig1Tfsdp();
  const Strategy u = BehavioralToSequence(fig1, UniformBehavioral(fig1));
  const double expect = -2 * std::log(2.0) - 0.5 * std::log(3.0);
  CHECK(std::abs(DilEntValue(fig1, u) - expect) <= 1e-12);
  CHECK(DilEntValue(fig1, u) == doctest::Approx(-1.935601).epsilon(1e-6));
  for (int k = 1; k <= 5; ++k) {
    const Tfsdp s = SimplexTfsdp(k);
    CHECK(std::abs(DilEntValue(s, BehavioralToSequence(s, UniformBehavioral(s))) + std::log(k)) <= 1e-12);
  }
  for (const auto& v : EnumerateVertices(fig1)) CHECK(DilEntValue(fig1, v) == 0.0);
}

TEST_CASE("minimizer") {
  const Tfsdp fig1 = Fig1Tfsdp();
  const auto lb = MinimizerLogBehavioral(fig1);
  const int a = fig1.FindDecision("A");
  CHECK(std::exp(lb[a][0]) == doctest::Approx(4.0 / 7));
  CHECK(std::exp(lb[a][1]) == doctest::Approx(3.0 / 7));
  for (const char* d : {"B", "C"}) {
    for (double l : lb[fig1.FindDecision(d)]) CHECK(std::exp(l) == doctest::Approx(0.5));
  }
  for (double l : lb[fig1.FindDecision("D")]) CHECK(std::exp(l) == doctest::Approx(1.0 / 3));
  const Strategy m = DgfMinimizer(fig1);
  CHECK(std::abs(DilEntValue(fig1, m) + std::log(7.0)) <= 1e-12);

  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    CHECK(DilEntValue(fig1, m) <= DilEntValue(fig1, RandomStrategy(fig1, rng, 0.3)));
  }
  for (const Tfsdp& t : TestProcesses()) {
    CHECK(std::abs(DilEntValue(t, DgfMinimizer(t)) + LogVertexCount(t)) <= 1e-9);
  }
}

TEST_CASE("value range") {
  Rng rng(2);
  for (const Tfsdp& t : TestProcesses()) {
    const double lv = LogVertexCount(t);
    for (int trial = 0; trial < 200; ++trial) {
      const double v = DilEntValue(t, RandomStrategy(t, rng, trial % 2 ? 0.4 : 0.0));
      CHECK(v >= -lv - 1e-9);
      CHECK(v <= 1e-12);
    }
  }
}

TEST_CASE("weighted spec with unit weights is the same function") {
  Rng rng(3);
  for (const Tfsdp& t : TestProcesses()) {
    DgfSpec ones;
    ones.weights.assign(t.num_points(), 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Strategy x = RandomStrategy(t, rng, 0.2);
      const Strategy p = RandomInteriorStrategy(t, rng);
      CHECK(DilEntValue(t, x, ones) == DilEntValue(t, x));
      CHECK(Bregman(t, x, p, ones) == Bregman(t, x, p));
    }
    DgfSpec bad;
    bad.weights.assign(t.num_points(), 0.0);
    if (t.num_decisions() > 0) {
      CHECK_THROWS_AS(DilEntValue(t, DgfMinimizer(t), bad), std::invalid_argument);
    }
  }
}

TEST_CASE("bregman") {
  const Tfsdp s2 = SimplexTfsdp(2);
  const Strategy half(std::vector<double>{0.5, 0.5});
  CHECK(std::abs(Bregman(s2, Strategy(std::vector<double>{1.0, 0.0}), half) - std::log(2.0)) <= 1e-15);
  CHECK(Bregman(s2, half, half) == 0.0);
  CHECK_THROWS_AS(Bregman(s2, half, Strategy(std::vector<double>{1.0, 0.0})),
                  std::invalid_argument);

  Rng rng(4);
  for (const Tfsdp& t : TestProcesses()) {
    for (int trial = 0; trial < 50; ++trial) {
      const Strategy p = RandomInteriorStrategy(t, rng, 0.05);
      const Strategy x = RandomInteriorStrategy(t, rng, 0.01);
      const double d = Bregman(t, x, p);
      CHECK(d >= 0.0);
      CHECK(std::abs(d - BregmanDefinitional(t, x, p)) <= 1e-5);
      CHECK(Bregman(t, p, p) <= 1e-15);
    }
  }
}

TEST_CASE("diameter") {
  const Tfsdp fig1 = Fig1Tfsdp();
  const Strategy m = DgfMinimizer(fig1);
  double worst = 0.0;
  for (const auto& v : EnumerateVertices(fig1)) worst = std::max(worst, Bregman(fig1, v, m));
  CHECK(worst <= std::log(7.0) + 1e-6);
  CHECK(worst >= std::log(7.0) - 1e-6);
  Rng rng(5);
  for (const Tfsdp& t : TestProcesses()) {
    const Strategy mt = DgfMinimizer(t);
    for (int trial = 0; trial < 300; ++trial) {
      CHECK(Bregman(t, RandomStrategy(t, rng, 0.3), mt) <= LogVertexCount(t) + 1e-6);
    }
  }
}

TEST_CASE("prox on a simplex is softmax") {
  Rng rng(6);
  for (int k = 1; k <= 5; ++k) {
    const Tfsdp t = SimplexTfsdp(k);
    const Strategy u = BehavioralToSequence(t, UniformBehavioral(t));
    const auto g = RandomGaussian(k, rng);
    const auto r = Prox(t, g, u);
    double z = 0.0;
    for (double v : g) z += std::exp(v);
    for (int a = 0; a < k; ++a) CHECK(std::abs(r.strategy[a] - std::exp(g[a]) / z) <= 1e-14);
    CHECK(std::abs(r.root_value - std::log(z / k)) <= 1e-12);
  }
}

TEST_CASE("prox with zero gradient returns the pivot") {
  Rng rng(7);
  for (const Tfsdp& t : TestProcesses()) {
    const Strategy p = RandomInteriorStrategy(t, rng);
    const auto r = Prox(t, std::vector<double>(t.num_terminals(), 0.0), p);
    CHECK(r.strategy == p);
  }
}

TEST_CASE("prox errors") {
  const Tfsdp fig1 = Fig1Tfsdp();
  const Strategy m = DgfMinimizer(fig1);
  std::vector<double> g(7, 0.0);
  g[0] = std::nan("");
  CHECK_THROWS_AS(Prox(fig1, g, m), std::invalid_argument);
  g[0] = 1.0;
  CHECK_THROWS_AS(Prox(fig1, g, EnumerateVertices(fig1)[0]), std::invalid_argument);
}

TEST_CASE("prox matches a grid search on fig1") {
  const Tfsdp t = Fig1Tfsdp();
  const Strategy pivot = DgfMinimizer(t);
  std::vector<double> g(7, 0.0);
  const int d8 = t.FindTerminal("D", "8");
  g[d8] = 5.0;
  const auto r = Prox(t, g, pivot);

  // The objective separates over decision points: D contributes
  // <g_D, b_D> - KL(b_D || 1/3) per unit of reach; B and C are best left at
  // the pivot, contributing 0; A then trades reach against KL at A.
  const std::vector<double> third(3, 1.0 / 3), half(2, 0.5);
  std::vector<double> best_d;
  const double h_d = oracle::SimplexGridMax(3, 1000, [&](const std::vector<double>& b) {
    return 5.0 * b[1] - oracle::Kl(b, third);
  }, &best_d);
  const double h_b = oracle::SimplexGridMax(2, 1000, [&](const std::vector<double>& b) {
    return -oracle::Kl(b, half);
  });
  const std::vector<double> piv_a = {4.0 / 7, 3.0 / 7};
  std::vector<double> best_a;
  const double grid_value = oracle::SimplexGridMax(2, 1000, [&](const std::vector<double>& b) {
    return b[0] * 2 * h_b + b[1] * h_d - oracle::Kl(b, piv_a);
  }, &best_a);

  CHECK(std::abs(ProxObjective(t, g, r.strategy, pivot) - grid_value) <= 1e-4);
  CHECK(std::abs(r.root_value - grid_value) <= 1e-4);
  const int a = t.FindDecision("A");
  CHECK(std::abs(r.behavioral[a][1] - best_a[1]) <= 1e-3);
  CHECK(r.behavioral[a][1] > 0.9);
  CHECK(std::abs(r.behavioral[t.FindDecision("D")][1] - best_d[1]) <= 1e-3);
  CHECK(r.strategy[d8] > 0.9);
}

TEST_CASE("prox optimality certificate") {
  Rng rng(8);
  std::normal_distribution<double> scale(0.0, 5.0);
  for (const Tfsdp& t : TestProcesses()) {
    if (VertexCount(t) > 2000) continue;
    const auto vertices = EnumerateVertices(t);
    for (int trial = 0; trial < 20; ++trial) {
      const Strategy pivot = RandomInteriorStrategy(t, rng);
      auto g = RandomGaussian(t.num_terminals(), rng);
      const double s = scale(rng);
      for (double& v : g) v *= s;
      const auto r = Prox(t, g, pivot);
      CHECK(ValidateMembership(t, r.strategy, Space::kStrategy));
      const double f = ProxObjective(t, g, r.strategy, pivot);
      CHECK(std::abs(f - r.root_value) <= 1e-9 * (1 + std::abs(f)));
      for (const auto& v : vertices) {
        CHECK(ProxObjective(t, g, v, pivot) <= f + 1e-7);
        Strategy mid(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) mid[k] = 0.5 * (v[k] + r.strategy[k]);
        CHECK(ProxObjective(t, g, mid, pivot) <= f + 1e-7);
      }
      for (int q = 0; q < 20; ++q) {
        CHECK(ProxObjective(t, g, RandomStrategy(t, rng, 0.2), pivot) <= f + 1e-7);
      }
    }
  }
}

TEST_CASE("prox is non-expansive") {
  Rng rng(9);
  for (const Tfsdp& t : TestProcesses()) {
    for (int trial = 0; trial < 50; ++trial) {
      const Strategy pivot = RandomInteriorStrategy(t, rng);
      const auto g1 = RandomGaussian(t.num_terminals(), rng);
      const auto g2 = RandomGaussian(t.num_terminals(), rng);
      const auto x1 = Prox(t, g1, pivot).strategy;
      const auto x2 = Prox(t, g2, pivot).strategy;
      std::vector<double> dx(x1.size()), dg(g1.size());
      for (std::size_t k = 0; k < dx.size(); ++k) {
        dx[k] = x1[k] - x2[k];
        dg[k] = g1[k] - g2[k];
      }
      CHECK(NormL1(t, dx) <= NormLinf(t, dg) + 1e-7);
    }
  }
}

TEST_CASE("strong convexity margin") {
  const Tfsdp s2 = SimplexTfsdp(2);
  const Strategy x(std::vector<double>{0.5, 0.5});
  const Strategy x2(std::vector<double>{0.75, 0.25});
  const double kl = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  CHECK(kl == doctest::Approx(0.130812).epsilon(1e-6));
  CHECK(std::abs(StrongConvexityMargin(s2, x, x2) - (kl - 0.125)) <= 1e-15);
  CHECK(StrongConvexityMargin(s2, x, x) == 0.0);
  Rng rng(10);
  const Tfsdp fig1 = Fig1Tfsdp();
  for (int trial = 0; trial < 1000; ++trial) {
    CHECK(StrongConvexityMargin(fig1, RandomInteriorStrategy(fig1, rng),
                                RandomInteriorStrategy(fig1, rng)) >= -1e-9);
  }
}

}  // namespace
}  // namespace treeplex
