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

#ifndef TREEPLEX_TFSDP_H_
#define TREEPLEX_TFSDP_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeplex/vectors.h"

namespace treeplex {

// Tolerance used for polytope membership and distribution checks.
inline constexpr double kMembershipTol = 1e-9;

enum class PointKind { kDecision, kObservation };

// A tree-form sequential decision process: decision points alternate with
// observation points (sequences). Point 0 is the root sequence. Points are
// stored in depth-first pre-order, so every child has a larger id than its
// parent and iterating ids backwards visits children before parents.
//
// Terminal sequences (observation points without children) are indexed
// densely in pre-order; that index is the coordinate order of every
// compressed vector (Strategy, Kernel, RewardVector).
class Tfsdp {
 public:
  struct Point {
    PointKind kind = PointKind::kObservation;
    std::string label;
    int parent = -1;
    // Decision point: one child observation point per action, in action
    // order. Observation point: the child decision points.
    std::vector<int> children;
    // Decision points only.
    std::vector<std::string> actions;
    // Terminal observation points only.
    int terminal = -1;
    // Single-action decision point inserted during game extraction.
    bool synthetic = false;
  };

  Tfsdp() = default;

  int root() const { return 0; }
  int num_points() const { return static_cast<int>(points_.size()); }
  int num_terminals() const { return static_cast<int>(terminals_.size()); }
  int num_decisions() const { return static_cast<int>(decisions_.size()); }

  const Point& point(int h) const { return points_[h]; }
  PointKind kind(int h) const { return points_[h].kind; }
  bool is_decision(int h) const { return points_[h].kind == PointKind::kDecision; }
  bool is_terminal(int h) const { return points_[h].terminal >= 0; }
  const std::vector<int>& children(int h) const { return points_[h].children; }
  int parent(int h) const { return points_[h].parent; }
  const std::string& label(int h) const { return points_[h].label; }
  int terminal_index(int h) const { return points_[h].terminal; }

  // Point id of the e-th terminal sequence.
  int terminal_point(int e) const { return terminals_[e]; }
  const std::vector<int>& terminals() const { return terminals_; }
  const std::vector<int>& decisions() const { return decisions_; }

  // Children before parents; every point exactly once.
  const std::vector<int>& topo_order() const { return topo_order_; }

  // Sum over decision points of their action counts.
  int total_actions() const;
  int max_actions() const;
  int min_actions() const;

  // -1 when absent.
  int FindDecision(std::string_view label) const;
  int FindSequence(std::string_view decision_label,
                   std::string_view action) const;
  // Terminal index of the sequence (decision_label, action); -1 when absent
  // or not terminal.
  int FindTerminal(std::string_view decision_label,
                   std::string_view action) const;

  // Human-readable name of a sequence, "label:action", or "root".
  std::string SequenceName(int h) const;

  bool StructurallyEqual(const Tfsdp& other) const;

 private:
  friend class TfsdpBuilder;

  std::vector<Point> points_;
  std::vector<int> terminals_;
  std::vector<int> decisions_;
  std::vector<int> topo_order_;
};

// Incrementally grows a TFSDP from its root sequence. Ids handed out by the
// builder are provisional; Build() renumbers points into pre-order.
class TfsdpBuilder {
 public:
  TfsdpBuilder();

  int root() const { return 0; }

  // Adds a decision point under the observation point `parent_sequence`.
  int AddDecision(int parent_sequence, std::string label,
                  bool synthetic = false);
  // Adds an action to decision point `decision`; returns the new sequence.
  int AddAction(int decision, std::string action);

  // Validates the tree invariants and returns the finished process. When
  // `final_ids` is given it receives the final id of every builder id.
  // Throws std::invalid_argument when a decision point has no actions.
  Tfsdp Build(std::vector<int>* final_ids = nullptr) const;

 private:
  std::vector<Tfsdp::Point> points_;
};

enum class Space { kStrategy, kKernel };

struct Extension {
  // One value per point.
  std::vector<double> values;
  // Largest disagreement found while propagating upwards.
  double violation = 0.0;
};

// Bottom-up extension of a terminal vector to every point, using the
// sequence-form recurrences of `space`. Never throws on inconsistent input:
// the disagreement is reported in `violation`.
Extension Extend(const Tfsdp& tfsdp, std::span<const double> terminal_values,
                 Space space);

bool ValidateMembership(const Tfsdp& tfsdp, std::span<const double> values,
                        Space space, double tol = kMembershipTol);

// Per decision point (indexed by point id; empty for observation points)
// distribution over actions.
using Behavioral = std::vector<std::vector<double>>;

Behavioral UniformBehavioral(const Tfsdp& tfsdp);

// Top-down products of action probabilities along each path.
// Throws std::invalid_argument on a malformed distribution.
Strategy BehavioralToSequence(const Tfsdp& tfsdp, const Behavioral& behavioral);

// Full extended vector (one entry per point) of a behavioral strategy.
std::vector<double> BehavioralReach(const Tfsdp& tfsdp,
                                    const Behavioral& behavioral);

// Local conditional distributions; unreached decision points (parent reach
// at most 1e-12) get the uniform distribution. Throws std::invalid_argument
// when `x` is not a member of Q.
Behavioral SequenceToBehavioral(const Tfsdp& tfsdp, const Strategy& x);

// Text encoding, one node per line:
//   tfsdp
//   node <id> observation children <id>...
//   node <id> decision <label> actions <a>... children <id>...
//   node <id> terminal
// The first node must be the root observation point.
std::string WriteTfsdp(const Tfsdp& tfsdp);
Tfsdp ParseTfsdp(std::string_view text);

}  // namespace treeplex

#endif  // TREEPLEX_TFSDP_H_
