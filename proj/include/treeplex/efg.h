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

#ifndef TREEPLEX_EFG_H_
#define TREEPLEX_EFG_H_

#include <string>
#include <string_view>
#include <vector>

#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

enum class NodeKind { kDecision, kChance, kTerminal };

struct EfgNode {
  std::string id;
  NodeKind kind = NodeKind::kTerminal;
  // Decision nodes.
  int player = -1;
  std::string infoset;
  std::vector<std::string> actions;
  // Chance nodes.
  std::vector<double> probs;
  // Decision and chance nodes, in action/outcome order.
  std::vector<int> children;
  // Terminal nodes: one payoff per player, each in [0, 1].
  std::vector<double> payoffs;
};

// An n-player extensive-form game. Node 0 is the root; nodes keep the order
// in which they were declared.
class Efg {
 public:
  Efg() = default;
  // Validates the tree (single root, every node reachable exactly once),
  // chance distributions and payoff ranges. Throws ParseError.
  Efg(int num_players, std::vector<EfgNode> nodes);

  int num_players() const { return num_players_; }
  const std::vector<EfgNode>& nodes() const { return nodes_; }
  const EfgNode& node(int i) const { return nodes_[i]; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_terminals() const;

  friend bool operator==(const Efg&, const Efg&);

 private:
  int num_players_ = 0;
  std::vector<EfgNode> nodes_;
};

bool operator==(const EfgNode& a, const EfgNode& b);

// Line-oriented encoding:
//   players <n>
//   node <id> decision <player> infoset <label> actions <a>... children <id>...
//   node <id> chance probs <p>... children <id>...
//   node <id> terminal payoffs <u1> ... <un>
// Reals are decimals or rationals "p/q". Lines starting with '#' are ignored.
Efg ParseEfg(std::string_view text);
std::string WriteEfg(const Efg& efg);

struct ExtractedTfsdp {
  Tfsdp tfsdp;
  // Indexed by EFG node id; the player's terminal index for terminal nodes,
  // -1 for every other node.
  std::vector<int> terminal_map;
  // Number of non-synthetic decision points (the player's infosets).
  int num_infosets = 0;
};

// Builds player `player`'s decision process. Sequences that carry payoffs
// and also lead to further infosets get a synthetic single-action decision
// point so that payoffs always land on terminal sequences. Throws
// std::invalid_argument on a perfect-recall violation.
ExtractedTfsdp ExtractTfsdp(const Efg& efg, int player);

using JointPolicy = std::vector<Strategy>;

// An EFG together with every player's extracted decision process and the
// flattened list of game leaves. Immutable once built.
class SequenceFormGame {
 public:
  explicit SequenceFormGame(Efg efg);

  const Efg& efg() const { return efg_; }
  int num_players() const { return efg_.num_players(); }
  const Tfsdp& tfsdp(int player) const { return players_[player].tfsdp; }
  const ExtractedTfsdp& player_view(int player) const { return players_[player]; }

  struct Leaf {
    int node = -1;
    double chance = 1.0;
    std::vector<double> payoffs;
    // Terminal index of the leaf in each player's decision process.
    std::vector<int> sequence;
  };
  const std::vector<Leaf>& leaves() const { return leaves_; }

  // Closed form: w[s] = sum over leaves z with s = s_z of u[z] * p[z] times
  // the opponents' reach of z. Throws std::invalid_argument on dimension
  // mismatch.
  RewardVector Reward(const JointPolicy& joint, int player) const;
  double ExpectedUtility(const JointPolicy& joint, int player) const;

  // Uniform behavioral strategy for every player.
  JointPolicy UniformJoint() const;

 private:
  void CheckJoint(const JointPolicy& joint) const;

  Efg efg_;
  std::vector<ExtractedTfsdp> players_;
  std::vector<Leaf> leaves_;
};

}  // namespace treeplex

#endif  // TREEPLEX_EFG_H_
