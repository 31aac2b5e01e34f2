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

// Command-line front end: inspect, norms, prox-check, learn, cce, rate.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "text_util.h"
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

using internal::FormatReal;

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameOptions {
  std::string builtin;
  std::string file;
  int player = 0;
};

struct LoadedGame {
  std::optional<SequenceFormGame> efg;
  std::optional<Tfsdp> tfsdp;  // set when the input is a decision process
  std::string source;

  const Tfsdp& process(int player) const {
    if (tfsdp) return *tfsdp;
    if (player < 0 || player >= efg->num_players()) {
      throw UsageError("--player " + std::to_string(player) + " out of range");
    }
    return efg->tfsdp(player);
  }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LoadedGame LoadGame(const GameOptions& opt) {
  if (opt.builtin.empty() == opt.file.empty()) {
    throw UsageError("exactly one of --builtin and --game is required");
  }
  LoadedGame g;
  if (!opt.builtin.empty()) {
    g.source = "builtin:" + opt.builtin;
    BuiltinResult r;
    try {
      r = BuiltinFromSpec(opt.builtin);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (auto* efg = std::get_if<Efg>(&r)) {
      g.efg.emplace(std::move(*efg));
    } else {
      g.tfsdp = std::get<Tfsdp>(std::move(r));
    }
    return g;
  }
  g.source = opt.file;
  const std::string text = ReadFile(opt.file);
  std::istringstream first(text);
  std::string word;
  while (first >> word && word.rfind('#', 0) == 0) std::getline(first, word);
  try {
    if (word == "tfsdp") {
      g.tfsdp = ParseTfsdp(text);
    } else {
      g.efg.emplace(ParseEfg(text));
    }
  } catch (const ParseError& e) {
    throw UsageError(opt.file + ": " + e.what());
  }
  return g;
}

void AddGameOptions(CLI::App* app, GameOptions& opt) {
  app->add_option("--builtin", opt.builtin, "builtin game, e.g. fig1, simplex:3, kuhn");
  app->add_option("--game", opt.file, "game file (EFG or TFSDP text format)");
  app->add_option("--player", opt.player, "player whose decision process is used");
}

// Output table with an echoed configuration header.
struct Table {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string RenderCsv(const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.config) os << "# " << k << '=' << v << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << FormatReal(row[c]);
    os << '\n';
  }
  return os.str();
}

std::string RenderJson(const Table& t) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.config) doc["config"][k] = v;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  return doc.dump(1) + "\n";
}

void WriteOutput(const std::string& path, const std::string& format, const Table& t) {
  const std::string body = format == "json" ? RenderJson(t) : RenderCsv(t);
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file '" + path + "'");
  out << body;
}

// Path of an auxiliary output derived from --out.
std::string Derived(const std::string& out, const std::string& tag,
                    const std::string& format) {
  return out + "." + tag + (format == "json" ? ".json" : ".csv");
}

double ParseEta(const std::string& s) {
  if (s == "auto") return 0.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--eta must be 'auto' or a positive number");
  }
}

// ---------------------------------------------------------------- inspect

void PrintMetrics(const Tfsdp& t, const std::string& prefix) {
  std::cout << prefix << "tree_size=" << TreeSize(t) << " leaf_count=" << LeafCount(t)
            << " vertices=" << VertexCount(t) << '\n';
  std::cout << prefix << "log_vertices=" << FormatReal(LogVertexCount(t))
            << " decisions=" << t.num_decisions() << " terminals=" << t.num_terminals()
            << " actions=" << t.total_actions() << '\n';
  const auto n = NormalizeObservations(t);
  std::cout << prefix << "normalized eliminated=" << n.eliminated
            << " actions=" << t.total_actions() << "->" << n.tfsdp.total_actions()
            << " leaf_count=" << LeafCount(n.tfsdp) << " vertices=" << VertexCount(n.tfsdp)
            << '\n';
}

int RunInspect(const GameOptions& opt, bool player_given) {
  const auto g = LoadGame(opt);
  if (g.tfsdp) {
    PrintMetrics(*g.tfsdp, "");
    return 0;
  }
  std::cout << "players=" << g.efg->num_players()
            << " nodes=" << g.efg->efg().num_nodes()
            << " terminals=" << g.efg->efg().num_terminals() << '\n';
  for (int i = 0; i < g.efg->num_players(); ++i) {
    if (player_given && i != opt.player) continue;
    std::cout << "player " << i << " infosets="
              << g.efg->player_view(i).num_infosets << '\n';
    PrintMetrics(g.efg->tfsdp(i), "  ");
  }
  return 0;
}

// ------------------------------------------------------------------ norms

std::vector<double> LoadVector(const std::string& spec, const Tfsdp& t) {
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("--vector random:<seed> needs an integer seed");
    }
    Rng rng(seed);
    return RandomGaussian(t.num_terminals(), rng);
  }
  std::string text = ReadFile(spec);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::vector<double> v;
  for (const auto& line : internal::TokenizeLines(text)) {
    for (const auto& tok : line) {
      try {
        v.push_back(internal::ParseReal(tok));
      } catch (const ParseError& e) {
        throw UsageError(spec + ": " + e.what());
      }
    }
  }
  if (static_cast<int>(v.size()) != t.num_terminals()) {
    throw UsageError("vector has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(t.num_terminals()));
  }
  return v;
}

int RunNorms(const GameOptions& opt, const std::string& vector_spec) {
  const auto g = LoadGame(opt);
  const Tfsdp& t = g.process(opt.player);
  const auto u = LoadVector(vector_spec, t);
  const double l1 = NormL1(t, u), linf = NormLinf(t, u);
  std::cout << "l1=" << FormatReal(l1) << " linf=" << FormatReal(linf) << '\n';
  try {
    const double o1 = NormOracle(t, u, NormKind::kL1);
    const double oi = NormOracle(t, u, NormKind::kLinf);
    std::cout << "oracle_l1_delta=" << FormatReal(std::abs(o1 - l1))
              << " oracle_linf_delta=" << FormatReal(std::abs(oi - linf)) << '\n';
    if (std::abs(o1 - l1) > 1e-12 * (1 + l1) || std::abs(oi - linf) > 1e-12 * (1 + linf)) {
      throw InvariantFailure("recursive norm disagrees with enumeration");
    }
  } catch (const CapExceeded&) {
    std::cout << "oracle=skipped (enumeration too large)\n";
  }
  return 0;
}

// ------------------------------------------------------------- prox-check

int RunProxCheck(const GameOptions& opt, std::uint64_t seed, int trials) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  const auto g = LoadGame(opt);
  const Tfsdp& t = g.process(opt.player);
  std::vector<Strategy> vertices;
  try {
    vertices = EnumerateVertices(t, 2000);
  } catch (const CapExceeded&) {
    std::cout << "vertices=skipped (enumeration too large)\n";
  }
  Rng rng(seed);
  std::normal_distribution<double> scale(0.0, 5.0);
  double worst_gap = -INFINITY, worst_lipschitz = -INFINITY, worst_margin = INFINITY,
         worst_bregman = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Strategy pivot = RandomInteriorStrategy(t, rng);
    auto gvec = RandomGaussian(t.num_terminals(), rng);
    const double s = scale(rng);
    for (double& v : gvec) v *= s;
    const auto r = Prox(t, gvec, pivot);
    const double f = ProxObjective(t, gvec, r.strategy, pivot);
    auto consider = [&](const Strategy& q) {
      worst_gap = std::max(worst_gap, ProxObjective(t, gvec, q, pivot) - f);
    };
    for (const auto& v : vertices) {
      consider(v);
      Strategy mid(v.size());
      for (std::size_t e = 0; e < v.size(); ++e) mid[e] = 0.5 * (v[e] + r.strategy[e]);
      consider(mid);
    }
    for (int q = 0; q < 10; ++q) consider(RandomStrategy(t, rng, 0.2));

    const auto g2 = RandomGaussian(t.num_terminals(), rng);
    const auto r2 = Prox(t, g2, pivot);
    std::vector<double> dx(gvec.size()), dg(gvec.size());
    for (std::size_t e = 0; e < dx.size(); ++e) {
      dx[e] = r.strategy[e] - r2.strategy[e];
      dg[e] = gvec[e] - g2[e];
    }
    worst_lipschitz = std::max(worst_lipschitz, NormL1(t, dx) - NormLinf(t, dg));
    const Strategy other = RandomInteriorStrategy(t, rng);
    worst_margin = std::min(worst_margin, StrongConvexityMargin(t, pivot, other));
    worst_bregman = std::max(
        worst_bregman, std::abs(Bregman(t, other, pivot) - BregmanDefinitional(t, other, pivot)));
  }
  std::cout << "trials=" << trials << " worst_certificate_gap=" << FormatReal(worst_gap)
            << " worst_nonexpansive_excess=" << FormatReal(worst_lipschitz)
            << " worst_strong_convexity_margin=" << FormatReal(worst_margin)
            << " worst_bregman_route_delta=" << FormatReal(worst_bregman) << '\n';
  if (worst_gap > 1e-7 || worst_lipschitz > 1e-7 || worst_margin < -1e-9 ||
      worst_bregman > 1e-5) {
    throw InvariantFailure("prox certificate suite failed");
  }
  return 0;
}

// ------------------------------------------------------------------ learn

// Runs fn(0..trials-1) on a thread pool. The first error, in seed order, is
// rethrown as a usage error.
template <typename Fn>
void ForEachSeed(int trials, Fn fn) {
  std::vector<std::string> errors(trials);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<unsigned>(hw, trials); ++w) {
    pool.emplace_back([&, w] {
      for (int k = static_cast<int>(w); k < trials; k += static_cast<int>(hw)) {
        try {
          fn(k);
        } catch (const std::exception& e) {
          errors[k] = e.what();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw UsageError(e);
  }
}

// Writes per-seed tables next to `out` and the seed-ordered merge to `out`.
void WriteTrials(const std::string& out, const std::string& format, std::uint64_t seed0,
                 const std::vector<Table>& tables, const std::string& tag = "") {
  if (!tag.empty() && out.empty()) return;
  const std::string suffix = tag.empty() ? "" : "." + tag;
  if (tables.size() == 1) {
    WriteOutput(tag.empty() ? out : Derived(out, tag, format), format, tables[0]);
    return;
  }
  Table merged;
  merged.config = tables[0].config;
  std::erase_if(merged.config, [](const auto& kv) { return kv.first == "seed"; });
  merged.config.push_back({"seeds", std::to_string(seed0) + ".." +
                                        std::to_string(seed0 + tables.size() - 1)});
  merged.columns = {"seed"};
  for (const auto& c : tables[0].columns) merged.columns.push_back(c);
  for (std::size_t k = 0; k < tables.size(); ++k) {
    if (!out.empty()) {
      WriteOutput(Derived(out, "seed" + std::to_string(seed0 + k) + suffix, format), format,
                  tables[k]);
    }
    for (const auto& row : tables[k].rows) {
      std::vector<double> r = {static_cast<double>(seed0 + k)};
      r.insert(r.end(), row.begin(), row.end());
      merged.rows.push_back(std::move(r));
    }
  }
  if (tag.empty()) {
    WriteOutput(out, format, merged);
  } else if (!out.empty()) {
    WriteOutput(Derived(out, tag, format), format, merged);
  }
}


struct LearnOptions {
  GameOptions game;
  std::string adversary = "hard";
  std::int64_t episodes = 0;
  std::string eta = "auto";
  std::uint64_t seed = 0;
  bool optimistic = false;
  int trials = 1;
  std::string out;
  std::string format = "csv";
};

struct LearnRun {
  Table table;
  std::string failure;
};

std::vector<RewardVector> LoadReplay(const std::string& path, const Tfsdp& t) {
  std::string text = ReadFile(path);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::vector<RewardVector> out;
  for (const auto& line : internal::TokenizeLines(text)) {
    RewardVector w;
    for (const auto& tok : line) {
      try {
        w.values.push_back(internal::ParseReal(tok));
      } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
      }
    }
    if (static_cast<int>(w.size()) != t.num_terminals()) {
      throw UsageError(path + ": line " + std::to_string(line.front().line) + " has " +
                       std::to_string(w.size()) + " entries, expected " +
                       std::to_string(t.num_terminals()));
    }
    out.push_back(std::move(w));
  }
  if (out.empty()) throw UsageError(path + ": no reward vectors");
  return out;
}

LearnRun LearnOne(const LearnOptions& opt, const LoadedGame& g, std::uint64_t seed,
                  const std::vector<RewardVector>& replay) {
  LearnerConfig cfg;
  cfg.eta = ParseEta(opt.eta);
  cfg.optimistic = opt.optimistic;
  LearnRun run;
  auto& t = run.table;
  t.config = {{"command", "learn"},       {"game", g.source},
              {"player", std::to_string(opt.game.player)},
              {"adversary", opt.adversary}, {"episodes", std::to_string(opt.episodes)},
              {"eta", opt.eta},           {"optimistic", opt.optimistic ? "1" : "0"},
              {"seed", std::to_string(seed)}};
  const bool tuned = cfg.eta <= 0.0 && !cfg.optimistic;
  if (opt.adversary == "selfplay") {
    if (!g.efg) throw UsageError("--adversary selfplay needs an extensive-form game");
    const auto r = RunSelfPlay(*g.efg, cfg, opt.episodes);
    t.columns = {"t"};
    for (int i = 0; i < g.efg->num_players(); ++i) {
      t.columns.push_back("regret_p" + std::to_string(i));
      t.config.push_back({"eta_p" + std::to_string(i), FormatReal(r.eta[i])});
    }
    for (std::int64_t k = 0; k < opt.episodes; ++k) {
      std::vector<double> row = {static_cast<double>(k + 1)};
      for (const auto& c : r.regret_curve) row.push_back(c[k]);
      t.rows.push_back(std::move(row));
    }
    for (int i = 0; i < g.efg->num_players(); ++i) {
      const double bound = RegretBound(g.efg->tfsdp(i), opt.episodes);
      if (tuned && r.regret_curve[i].back() > bound * (1 + 1e-6)) {
        run.failure = "player " + std::to_string(i) + " regret exceeds sqrt(2 ln|V| T)";
      }
    }
    return run;
  }
  const Tfsdp& process = g.process(opt.game.player);
  AdversaryConfig adv;
  if (opt.adversary == "hard") {
    adv.kind = AdversaryKind::kHard;
    if (opt.episodes < LeafCount(process)) {
      throw UsageError("--episodes must be at least the leaf count " +
                       std::to_string(LeafCount(process)));
    }
  } else if (opt.adversary == "random") {
    adv.kind = AdversaryKind::kRandom;
  } else if (opt.adversary == "zero") {
    adv.kind = AdversaryKind::kZero;
  } else {
    adv.kind = AdversaryKind::kReplay;
    adv.replay = replay;
  }
  MatchResult r;
  try {
    r = RunMatch(process, cfg, adv, opt.episodes, seed);
  } catch (const std::invalid_argument& e) {
    // Replayed rewards outside [0, 1] are an input error.
    throw UsageError(e.what());
  }
  t.config.push_back({"eta_value", FormatReal(r.eta)});
  t.config.push_back({"regret_bound", FormatReal(RegretBound(process, opt.episodes))});
  t.columns = {"t", "reward", "regret"};
  for (std::int64_t k = 0; k < opt.episodes; ++k) {
    t.rows.push_back({static_cast<double>(k + 1), r.reward_curve[k], r.regret_curve[k]});
  }
  if (tuned && r.regret_curve.back() > RegretBound(process, opt.episodes) * (1 + 1e-6)) {
    run.failure = "regret exceeds sqrt(2 ln|V| T)";
  }
  if (r.bound.regret > r.bound.bound + 1e-9) {
    run.failure = "regret exceeds the predictive bound";
  }
  return run;
}

int RunLearn(const LearnOptions& opt) {
  if (opt.episodes < 1) throw UsageError("--episodes must be >= 1");
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  ParseEta(opt.eta);
  const auto g = LoadGame(opt.game);
  std::vector<RewardVector> replay;
  const bool named = opt.adversary == "hard" || opt.adversary == "random" ||
                     opt.adversary == "zero" || opt.adversary == "selfplay";
  if (!named) replay = LoadReplay(opt.adversary, g.process(opt.game.player));

  std::vector<LearnRun> runs(opt.trials);
  ForEachSeed(opt.trials, [&](int k) { runs[k] = LearnOne(opt, g, opt.seed + k, replay); });
  std::vector<Table> tables;
  for (const auto& r : runs) tables.push_back(r.table);
  WriteTrials(opt.out, opt.format, opt.seed, tables);
  for (int k = 0; k < opt.trials; ++k) {
    const auto& rows = runs[k].table.rows;
    std::cerr << "seed=" << opt.seed + k << " final_regret=" << FormatReal(rows.back().back())
              << '\n';
  }
  for (int k = 0; k < opt.trials; ++k) {
    if (!runs[k].failure.empty()) {
      throw InvariantFailure("seed " + std::to_string(opt.seed + k) + ": " + runs[k].failure);
    }
  }
  return 0;
}

// -------------------------------------------------------------------- cce

struct CceOptions {
  GameOptions game;
  int episodes = 0;
  std::string inner = "auto";
  std::string eta = "auto";
  std::uint64_t seed = 0;
  int trials = 1;
  std::string out;
  std::string format = "csv";
};

struct CceRun {
  Table gaps, residuals;
  double final_gap = 0.0;
  int inner_steps = 0;
  double eta = 0.0;
  bool contraction_flag = false;
  std::string failure;
};

CceRun CceOne(const CceOptions& opt, const SequenceFormGame& game, const std::string& source,
              int inner, std::uint64_t seed) {
  ClairvoyantConfig cfg;
  cfg.episodes = opt.episodes;
  cfg.inner_steps = inner;
  cfg.eta = ParseEta(opt.eta);
  cfg.seed = seed;
  const auto log = ClairvoyantRun(game, cfg);
  const int n = log.num_players;

  CceRun run;
  run.inner_steps = log.inner_steps;
  run.eta = log.eta;
  run.contraction_flag = log.contraction_flag;
  auto& gaps = run.gaps;
  gaps.config = {{"command", "cce"},         {"game", source},
                 {"K", std::to_string(opt.episodes)},
                 {"L", std::to_string(log.inner_steps)},
                 {"eta", FormatReal(log.eta)}, {"seed", std::to_string(seed)}};
  gaps.columns = {"t", "max_gap"};
  for (int i = 0; i < n; ++i) gaps.columns.push_back("prediction_error_p" + std::to_string(i));
  for (int t = 0; t < log.episodes; ++t) {
    std::vector<double> row = {static_cast<double>(t + 1), log.gap_curve[t]};
    for (int i = 0; i < n; ++i) row.push_back(log.prediction_errors[t * n + i]);
    gaps.rows.push_back(std::move(row));
  }
  auto& residuals = run.residuals;
  residuals.config = gaps.config;
  residuals.columns = {"t", "l", "player", "residual", "bound"};
  const double ratio = n * log.eta;
  for (int t = 0; t < log.episodes; ++t) {
    for (int l = 1; l <= log.inner_steps; ++l) {
      for (int i = 0; i < n; ++i) {
        const double bound = 2.0 * std::pow(ratio, l - 1);
        const double res = log.Residual(t, l, i);
        residuals.rows.push_back({static_cast<double>(t + 1), static_cast<double>(l),
                                  static_cast<double>(i), res, bound});
        if (!log.contraction_flag && res > bound + 1e-9) {
          run.failure = "fixed-point residual above 2 (n eta)^(l-1)";
        }
      }
    }
  }
  const auto gap = ComputeCceGap(game, AveragePolicy(log));
  run.final_gap = gap.max_gap;
  double worst_regret = -INFINITY;
  for (double r : log.regret) worst_regret = std::max(worst_regret, r);
  for (double v : gap.per_player) {
    if (v < -1e-9) run.failure = "negative CCE gap";
  }
  if (gap.max_gap > worst_regret / log.episodes + 1e-9) {
    run.failure = "CCE gap exceeds max regret / K";
  }
  return run;
}

int RunCce(const CceOptions& opt) {
  if (opt.episodes < 1) throw UsageError("--K must be >= 1");
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  ParseEta(opt.eta);
  int inner = -1;
  if (opt.inner != "auto") {
    try {
      std::size_t used = 0;
      inner = std::stoi(opt.inner, &used);
      if (used != opt.inner.size() || inner < 0) throw std::invalid_argument(opt.inner);
    } catch (const std::exception&) {
      throw UsageError("--L must be 'auto' or a non-negative integer");
    }
  }
  const auto g = LoadGame(opt.game);
  if (!g.efg) throw UsageError("cce needs an extensive-form game");
  std::vector<CceRun> runs(opt.trials);
  ForEachSeed(opt.trials,
              [&](int k) { runs[k] = CceOne(opt, *g.efg, g.source, inner, opt.seed + k); });
  std::vector<Table> gaps, residuals;
  for (const auto& r : runs) {
    gaps.push_back(r.gaps);
    residuals.push_back(r.residuals);
  }
  WriteTrials(opt.out, opt.format, opt.seed, gaps);
  WriteTrials(opt.out, opt.format, opt.seed, residuals, "residuals");
  for (int k = 0; k < opt.trials; ++k) {
    const auto& r = runs[k];
    std::cerr << "seed=" << opt.seed + k << " final_max_gap=" << FormatReal(r.final_gap)
              << " L=" << r.inner_steps << " eta=" << FormatReal(r.eta) << '\n';
    if (r.contraction_flag) std::cerr << "warning: n*eta >= 1, no contraction guarantee\n";
  }
  for (int k = 0; k < opt.trials; ++k) {
    if (!runs[k].failure.empty()) {
      throw InvariantFailure("seed " + std::to_string(opt.seed + k) + ": " + runs[k].failure);
    }
  }
  return 0;
}

// ------------------------------------------------------------------- rate

struct Curve {
  std::vector<double> x, y;
};

Curve ReadCurve(const std::string& path, const std::string& column) {
  std::istringstream in(ReadFile(path));
  std::string line;
  std::vector<std::string> header;
  Curve c;
  int col = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      if (column.empty()) {
        col = static_cast<int>(header.size()) - 1;
      } else {
        const auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end()) throw UsageError(path + ": no column '" + column + "'");
        col = static_cast<int>(it - header.begin());
      }
      continue;
    }
    if (static_cast<int>(cells.size()) != static_cast<int>(header.size())) {
      throw UsageError(path + ": ragged row");
    }
    try {
      c.x.push_back(std::stod(cells[0]));
      c.y.push_back(std::stod(cells[col]));
    } catch (const std::exception&) {
      throw UsageError(path + ": non-numeric cell");
    }
  }
  return c;
}

int RunRate(const std::vector<std::string>& inputs, const std::string& column) {
  std::vector<Curve> curves;
  for (const auto& path : inputs) {
    curves.push_back(ReadCurve(path, column));
    try {
      const auto f = EmpiricalRateFit(curves.back().x, curves.back().y);
      std::cout << path << " slope=" << FormatReal(f.slope) << " r2=" << FormatReal(f.r2)
                << '\n';
    } catch (const std::invalid_argument& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  if (curves.size() > 1) {
    Curve mean = curves[0];
    for (std::size_t k = 1; k < curves.size(); ++k) {
      if (curves[k].x != mean.x) throw UsageError("curves have different x columns");
      for (std::size_t i = 0; i < mean.y.size(); ++i) mean.y[i] += curves[k].y[i];
    }
    for (double& v : mean.y) v /= static_cast<double>(curves.size());
    const auto f = EmpiricalRateFit(mean.x, mean.y);
    std::cout << "mean slope=" << FormatReal(f.slope) << " r2=" << FormatReal(f.r2) << '\n';
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Treeplex norms, dilated entropy and mirror descent experiments"};
  app.require_subcommand(1);

  GameOptions inspect_game;
  auto* inspect = app.add_subcommand("inspect", "structural metrics of a game");
  AddGameOptions(inspect, inspect_game);

  GameOptions norms_game;
  std::string vector_spec;
  auto* norms = app.add_subcommand("norms", "treeplex l1 / l-infinity norms of a vector");
  AddGameOptions(norms, norms_game);
  norms->add_option("--vector", vector_spec, "vector file or random:<seed>")->required();

  GameOptions prox_game;
  std::uint64_t prox_seed = 0;
  int prox_trials = 100;
  auto* prox = app.add_subcommand("prox-check", "prox optimality certificate suite");
  AddGameOptions(prox, prox_game);
  prox->add_option("--seed", prox_seed)->required();
  prox->add_option("--trials", prox_trials);

  LearnOptions learn_opt;
  auto* learn = app.add_subcommand("learn", "online mirror descent against an adversary");
  AddGameOptions(learn, learn_opt.game);
  learn->add_option("--adversary", learn_opt.adversary,
                    "hard, random, zero, selfplay or a reward-vector file");
  learn->add_option("--episodes", learn_opt.episodes)->required();
  learn->add_option("--eta", learn_opt.eta, "learning rate or auto");
  learn->add_option("--seed", learn_opt.seed)->required();
  learn->add_flag("--optimistic", learn_opt.optimistic, "predict the previous reward");
  learn->add_option("--trials", learn_opt.trials, "seeds seed..seed+trials-1");
  learn->add_option("--out", learn_opt.out);
  learn->add_option("--format", learn_opt.format)->check(CLI::IsMember({"csv", "json"}));

  CceOptions cce_opt;
  auto* cce = app.add_subcommand("cce", "clairvoyant mirror descent CCE computation");
  AddGameOptions(cce, cce_opt.game);
  cce->add_option("--K", cce_opt.episodes)->required();
  cce->add_option("--L", cce_opt.inner, "inner steps or auto");
  cce->add_option("--eta", cce_opt.eta, "learning rate or auto");
  cce->add_option("--seed", cce_opt.seed, "recorded in the output; the run is deterministic");
  cce->add_option("--trials", cce_opt.trials, "seeds seed..seed+trials-1");
  cce->add_option("--out", cce_opt.out);
  cce->add_option("--format", cce_opt.format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> rate_inputs;
  std::string rate_column;
  auto* rate = app.add_subcommand("rate", "log-log slope of curves over their last half");
  rate->add_option("--in", rate_inputs, "curve files")->required();
  rate->add_option("--column", rate_column, "value column (default: last)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    if (*inspect) return RunInspect(inspect_game, inspect->count("--player") > 0);
    if (*norms) return RunNorms(norms_game, vector_spec);
    if (*prox) return RunProxCheck(prox_game, prox_seed, prox_trials);
    if (*learn) return RunLearn(learn_opt);
    if (*cce) return RunCce(cce_opt);
    if (*rate) return RunRate(rate_inputs, rate_column);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failed: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace treeplex

int main(int argc, char** argv) { return treeplex::Main(argc, argv); }
