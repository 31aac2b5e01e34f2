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

#ifndef TREEPLEX_GAMES_H_
#define TREEPLEX_GAMES_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "treeplex/efg.h"
#include "treeplex/tfsdp.h"

namespace treeplex {

// The four-decision-point process A -> {B, C | D}: A's first action leads to
// an observation with two outcomes (B, C), its second to D with three
// actions. Tree size 4, leaf count 2, seven reduced strategies.
Tfsdp Fig1Tfsdp();

// fig1 after eliminating its single-outcome observation point.
Tfsdp Fig2NormalizedTfsdp();

// One decision point with k terminal actions.
Tfsdp SimplexTfsdp(int k);

// Random process with `depth` decision levels. Decision points get between
// min(2, dec_branch) and dec_branch actions; non-terminal observation points
// get between 1 and obs_branch child decision points. Deterministic in seed.
Tfsdp RandomTfsdp(int depth, int dec_branch, int obs_branch,
                  std::uint64_t seed);

// Kuhn poker with `players` players and players + 1 cards, payoffs rescaled
// affinely into [0, 1]. players == 2 is the classic three-card game.
Efg KuhnPoker(int players = 2);

// Row player scores 1 on a match, column player 1 on a mismatch.
Efg MatchingPennies();

// Random perfect-recall game: each level is a chance node or a move by
// one player, and every level's outcome is hidden from some players.
// Payoffs are uniform in [0, 1]. Deterministic in seed.
Efg RandomEfg(int players, int depth, std::uint64_t seed);

using BuiltinResult = std::variant<Efg, Tfsdp>;

// name in {fig1, fig2_normalized, simplex, kuhn, kuhn3, matching_pennies,
// random_tfsdp, random_efg}. Parameters: simplex {k}; random_tfsdp {depth,
// dec_branch, obs_branch, seed}; random_efg {players, depth, seed}.
// Throws std::invalid_argument on unknown names or invalid parameters.
BuiltinResult BuiltinGame(std::string_view name,
                          const std::map<std::string, std::string>& params = {});

// Parses "name" or "name:v1,v2,..." (positional, in the parameter order
// listed above), e.g. "simplex:3" or "random_tfsdp:2,2,2,7".
BuiltinResult BuiltinFromSpec(std::string_view spec);

}  // namespace treeplex

#endif  // TREEPLEX_GAMES_H_
