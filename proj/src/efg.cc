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

#include "treeplex/efg.h"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "text_util.h"

namespace treeplex {

namespace {

constexpr double kChanceTol = 1e-12;

void CheckChance(const std::vector<double>& probs, const std::string& id,
                 int line, int column) {
  double s = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw ParseError("chance node '" + id + "' has a negative probability",
                       line, column);
    }
    s += p;
  }
  if (std::abs(s - 1.0) > kChanceTol) {
    throw ParseError("chance probabilities sum != 1 at node '" + id + "'", line,
                     column);
  }
}

void CheckPayoffs(const std::vector<double>& payoffs, const std::string& id,
                  int line, int column) {
  for (double u : payoffs) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw ParseError("payoff outside [0, 1] at node '" + id + "'", line,
                       column);
    }
  }
}

}  // namespace

bool operator==(const EfgNode& a, const EfgNode& b) {
  return a.id == b.id && a.kind == b.kind && a.player == b.player &&
         a.infoset == b.infoset && a.actions == b.actions &&
         a.probs == b.probs && a.children == b.children &&
         a.payoffs == b.payoffs;
}

bool operator==(const Efg& a, const Efg& b) {
  return a.num_players_ == b.num_players_ && a.nodes_ == b.nodes_;
}

Efg::Efg(int num_players, std::vector<EfgNode> nodes)
    : num_players_(num_players), nodes_(std::move(nodes)) {
  if (num_players_ < 1) throw ParseError("need at least one player", 0, 0);
  if (nodes_.empty()) throw ParseError("game has no nodes", 0, 0);
  std::vector<int> parents(nodes_.size(), 0);
  for (const auto& n : nodes_) {
    switch (n.kind) {
      case NodeKind::kDecision:
        if (n.player < 0 || n.player >= num_players_) {
          throw ParseError("node '" + n.id + "' has an invalid player", 0, 0);
        }
        if (n.actions.empty() || n.actions.size() != n.children.size()) {
          throw ParseError("node '" + n.id + "' needs one child per action", 0,
                           0);
        }
        break;
      case NodeKind::kChance:
        if (n.probs.empty() || n.probs.size() != n.children.size()) {
          throw ParseError("node '" + n.id + "' needs one child per outcome", 0,
                           0);
        }
        CheckChance(n.probs, n.id, 0, 0);
        break;
      case NodeKind::kTerminal:
        if (static_cast<int>(n.payoffs.size()) != num_players_) {
          throw ParseError("node '" + n.id + "' needs one payoff per player", 0,
                           0);
        }
        CheckPayoffs(n.payoffs, n.id, 0, 0);
        break;
    }
    for (int c : n.children) {
      if (c <= 0 || c >= num_nodes()) {
        throw ParseError("node '" + n.id + "' has a dangling child", 0, 0);
      }
      ++parents[c];
    }
  }
  for (int i = 1; i < num_nodes(); ++i) {
    if (parents[i] != 1) {
      throw ParseError("node '" + nodes_[i].id +
                           (parents[i] == 0 ? "' is unreachable"
                                            : "' has more than one parent"),
                       0, 0);
    }
  }
  // Reachability from the root rules out cycles among the non-root nodes.
  std::vector<int> stack = {0};
  int visited = 0;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    ++visited;
    for (int c : nodes_[i].children) stack.push_back(c);
  }
  if (visited != num_nodes()) {
    throw ParseError("node graph is not a tree rooted at the first node", 0, 0);
  }
}

int Efg::num_terminals() const {
  int n = 0;
  for (const auto& node : nodes_) n += node.kind == NodeKind::kTerminal;
  return n;
}

Efg ParseEfg(std::string_view text) {
  using internal::Token;
  const auto lines = internal::TokenizeLines(text);
  if (lines.empty()) throw ParseError("empty document", 1, 1);
  const auto& header = lines[0];
  if (header[0].text != "players" || header.size() != 2) {
    throw ParseError("expected header 'players <n>'", header[0].line,
                     header[0].column);
  }
  const int n = internal::ParseInt(header[1]);
  if (n < 1) {
    throw ParseError("need at least one player", header[1].line,
                     header[1].column);
  }

  std::vector<EfgNode> nodes;
  std::vector<std::vector<Token>> child_tokens;
  std::unordered_map<std::string, int> index;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& tk = lines[li];
    if (tk[0].text != "node" || tk.size() < 3) {
      throw ParseError("expected 'node <id> <kind> ...'", tk[0].line,
                       tk[0].column);
    }
    EfgNode node;
    node.id = tk[1].text;
    std::vector<Token> children;
    auto expect = [&](std::size_t i, const char* word) {
      if (i >= tk.size() || tk[i].text != word) {
        const auto& at = i < tk.size() ? tk[i] : tk.back();
        throw ParseError(std::string("expected '") + word + "'", at.line,
                         at.column + (i < tk.size() ? 0 : 1));
      }
    };
    auto read_children = [&](std::size_t i) {
      expect(i, "children");
      for (std::size_t k = i + 1; k < tk.size(); ++k) children.push_back(tk[k]);
    };
    const std::string& kind = tk[2].text;
    if (kind == "decision") {
      node.kind = NodeKind::kDecision;
      if (tk.size() < 4) expect(3, "<player>");
      node.player = internal::ParseInt(tk[3]);
      if (node.player < 0 || node.player >= n) {
        throw ParseError("player index out of range", tk[3].line, tk[3].column);
      }
      expect(4, "infoset");
      if (tk.size() < 6) expect(5, "<label>");
      node.infoset = tk[5].text;
      expect(6, "actions");
      std::size_t i = 7;
      while (i < tk.size() && tk[i].text != "children") {
        node.actions.push_back(tk[i].text);
        ++i;
      }
      read_children(i);
      if (node.actions.empty() || node.actions.size() != children.size()) {
        throw ParseError("decision node needs one child per action", tk[2].line,
                         tk[2].column);
      }
    } else if (kind == "chance") {
      node.kind = NodeKind::kChance;
      expect(3, "probs");
      std::size_t i = 4;
      while (i < tk.size() && tk[i].text != "children") {
        node.probs.push_back(internal::ParseReal(tk[i]));
        ++i;
      }
      read_children(i);
      if (node.probs.empty() || node.probs.size() != children.size()) {
        throw ParseError("chance node needs one child per outcome", tk[2].line,
                         tk[2].column);
      }
      CheckChance(node.probs, node.id, tk[3].line, tk[3].column);
    } else if (kind == "terminal") {
      node.kind = NodeKind::kTerminal;
      expect(3, "payoffs");
      for (std::size_t i = 4; i < tk.size(); ++i) {
        node.payoffs.push_back(internal::ParseReal(tk[i]));
      }
      if (static_cast<int>(node.payoffs.size()) != n) {
        throw ParseError("terminal node needs one payoff per player",
                         tk[2].line, tk[2].column);
      }
      CheckPayoffs(node.payoffs, node.id, tk[3].line, tk[3].column);
    } else {
      throw ParseError("unknown node kind '" + kind + "'", tk[2].line,
                       tk[2].column);
    }
    if (!index.emplace(node.id, static_cast<int>(nodes.size())).second) {
      throw ParseError("duplicate node id '" + node.id + "'", tk[1].line,
                       tk[1].column);
    }
    nodes.push_back(std::move(node));
    child_tokens.push_back(std::move(children));
  }
  if (nodes.empty()) throw ParseError("game has no nodes", header[0].line, 1);

  std::vector<int> parent_count(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& t : child_tokens[i]) {
      auto it = index.find(t.text);
      if (it == index.end()) {
        throw ParseError("dangling child reference '" + t.text + "'", t.line,
                         t.column);
      }
      if (it->second == 0 || parent_count[it->second]++ > 0) {
        throw ParseError("node '" + t.text + "' has more than one parent",
                         t.line, t.column);
      }
      nodes[i].children.push_back(it->second);
    }
  }
  return Efg(n, std::move(nodes));
}

std::string WriteEfg(const Efg& efg) {
  using internal::FormatReal;
  std::ostringstream os;
  os << "players " << efg.num_players() << '\n';
  for (const auto& n : efg.nodes()) {
    os << "node " << n.id;
    switch (n.kind) {
      case NodeKind::kDecision:
        os << " decision " << n.player << " infoset " << n.infoset
           << " actions";
        for (const auto& a : n.actions) os << ' ' << a;
        break;
      case NodeKind::kChance:
        os << " chance probs";
        for (double p : n.probs) os << ' ' << FormatReal(p);
        break;
      case NodeKind::kTerminal:
        os << " terminal payoffs";
        for (double u : n.payoffs) os << ' ' << FormatReal(u);
        break;
    }
    if (n.kind != NodeKind::kTerminal) {
      os << " children";
      for (int c : n.children) os << ' ' << efg.node(c).id;
    }
    os << '\n';
  }
  return os.str();
}

ExtractedTfsdp ExtractTfsdp(const Efg& efg, int player) {
  if (player < 0 || player >= efg.num_players()) {
    throw std::invalid_argument("ExtractTfsdp: player out of range");
  }
  // First pass: discover the player's infosets and sequences in game-tree
  // depth-first order.
  struct Seq {
    std::string name;
    std::vector<int> infosets;
    bool has_leaf = false;
  };
  struct Info {
    std::string label;
    int parent_seq = 0;
    std::vector<std::string> actions;
    std::vector<int> seqs;
  };
  std::vector<Seq> seqs(1);
  seqs[0].name = "root";
  std::vector<Info> infos;
  std::map<std::string, int> info_index;
  std::vector<int> leaf_seq(efg.num_nodes(), -1);

  std::vector<std::pair<int, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    auto [id, seq] = stack.back();
    stack.pop_back();
    const EfgNode& node = efg.node(id);
    if (node.kind == NodeKind::kTerminal) {
      leaf_seq[id] = seq;
      seqs[seq].has_leaf = true;
      continue;
    }
    if (node.kind == NodeKind::kDecision && node.player == player) {
      auto [it, fresh] =
          info_index.emplace(node.infoset, static_cast<int>(infos.size()));
      if (fresh) {
        Info info;
        info.label = node.infoset;
        info.parent_seq = seq;
        info.actions = node.actions;
        for (const auto& a : node.actions) {
          info.seqs.push_back(static_cast<int>(seqs.size()));
          seqs.push_back({node.infoset + ":" + a, {}, false});
        }
        seqs[seq].infosets.push_back(it->second);
        infos.push_back(std::move(info));
      }
      const Info& info = infos[it->second];
      if (info.parent_seq != seq) {
        throw std::invalid_argument("perfect recall violated at infoset '" +
                                    node.infoset + "' (node '" + node.id + "')");
      }
      if (info.actions != node.actions) {
        throw std::invalid_argument("infoset '" + node.infoset +
                                    "' has inconsistent actions at node '" +
                                    node.id + "'");
      }
      for (std::size_t a = node.children.size(); a-- > 0;) {
        stack.push_back({node.children[a], info.seqs[a]});
      }
    } else {
      for (std::size_t a = node.children.size(); a-- > 0;) {
        stack.push_back({node.children[a], seq});
      }
    }
  }

  // Second pass: emit the process in pre-order, terminalising sequences that
  // carry payoffs but also lead to further infosets.
  TfsdpBuilder builder;
  std::vector<int> seq_terminal(seqs.size(), -1);
  struct Frame {
    int seq;
    int point;
  };
  std::vector<Frame> todo = {{0, builder.root()}};
  while (!todo.empty()) {
    const Frame f = todo.back();
    todo.pop_back();
    const Seq& s = seqs[f.seq];
    if (s.infosets.empty()) {
      seq_terminal[f.seq] = f.point;
      continue;
    }
    std::vector<Frame> next;
    for (int ii : s.infosets) {
      const Info& info = infos[ii];
      const int d = builder.AddDecision(f.point, info.label);
      for (std::size_t a = 0; a < info.actions.size(); ++a) {
        next.push_back({info.seqs[a], builder.AddAction(d, info.actions[a])});
      }
    }
    if (s.has_leaf) {
      const int d = builder.AddDecision(f.point, "end@" + s.name, true);
      seq_terminal[f.seq] = builder.AddAction(d, "end");
    }
    for (auto it = next.rbegin(); it != next.rend(); ++it) todo.push_back(*it);
  }

  std::vector<int> final_ids;
  ExtractedTfsdp out;
  out.tfsdp = builder.Build(&final_ids);
  out.num_infosets = static_cast<int>(infos.size());
  out.terminal_map.assign(efg.num_nodes(), -1);
  for (int id = 0; id < efg.num_nodes(); ++id) {
    if (leaf_seq[id] < 0) continue;
    const int point = final_ids[seq_terminal[leaf_seq[id]]];
    out.terminal_map[id] = out.tfsdp.terminal_index(point);
  }
  return out;
}

SequenceFormGame::SequenceFormGame(Efg efg) : efg_(std::move(efg)) {
  for (int i = 0; i < efg_.num_players(); ++i) {
    players_.push_back(ExtractTfsdp(efg_, i));
  }
  std::vector<std::pair<int, double>> stack = {{0, 1.0}};
  while (!stack.empty()) {
    auto [id, prob] = stack.back();
    stack.pop_back();
    const EfgNode& node = efg_.node(id);
    if (node.kind == NodeKind::kTerminal) {
      Leaf leaf;
      leaf.node = id;
      leaf.chance = prob;
      leaf.payoffs = node.payoffs;
      for (const auto& view : players_) {
        leaf.sequence.push_back(view.terminal_map[id]);
      }
      leaves_.push_back(std::move(leaf));
      continue;
    }
    for (std::size_t a = node.children.size(); a-- > 0;) {
      const double p =
          node.kind == NodeKind::kChance ? prob * node.probs[a] : prob;
      stack.push_back({node.children[a], p});
    }
  }
}

void SequenceFormGame::CheckJoint(const JointPolicy& joint) const {
  if (static_cast<int>(joint.size()) != num_players()) {
    throw std::invalid_argument("joint policy has the wrong number of players");
  }
  for (int i = 0; i < num_players(); ++i) {
    if (static_cast<int>(joint[i].size()) != tfsdp(i).num_terminals()) {
      throw std::invalid_argument("joint policy component " +
                                  std::to_string(i) + " has wrong dimension");
    }
  }
}

RewardVector SequenceFormGame::Reward(const JointPolicy& joint,
                                      int player) const {
  CheckJoint(joint);
  if (player < 0 || player >= num_players()) {
    throw std::invalid_argument("Reward: player out of range");
  }
  RewardVector w(tfsdp(player).num_terminals());
  for (const Leaf& leaf : leaves_) {
    double v = leaf.payoffs[player] * leaf.chance;
    for (int j = 0; j < num_players() && v != 0.0; ++j) {
      if (j != player) v *= joint[j][leaf.sequence[j]];
    }
    w[leaf.sequence[player]] += v;
  }
  return w;
}

double SequenceFormGame::ExpectedUtility(const JointPolicy& joint,
                                         int player) const {
  return Dot(joint[player], Reward(joint, player));
}

JointPolicy SequenceFormGame::UniformJoint() const {
  JointPolicy joint;
  for (int i = 0; i < num_players(); ++i) {
    joint.push_back(BehavioralToSequence(tfsdp(i), UniformBehavioral(tfsdp(i))));
  }
  return joint;
}

}  // namespace treeplex
