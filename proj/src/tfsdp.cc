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

#include "treeplex/tfsdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "text_util.h"

namespace treeplex {

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Dot: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CompensatedVectorSum::Add(std::span<const double> v) {
  if (v.size() != sums_.size()) {
    throw std::invalid_argument("CompensatedVectorSum: dimension mismatch");
  }
  for (std::size_t i = 0; i < v.size(); ++i) sums_[i].Add(v[i]);
}

std::vector<double> CompensatedVectorSum::values() const {
  std::vector<double> out(sums_.size());
  for (std::size_t i = 0; i < sums_.size(); ++i) out[i] = sums_[i].value();
  return out;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        ", column " + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

int Tfsdp::total_actions() const {
  int n = 0;
  for (int j : decisions_) n += static_cast<int>(points_[j].children.size());
  return n;
}

int Tfsdp::max_actions() const {
  int n = 0;
  for (int j : decisions_) {
    n = std::max(n, static_cast<int>(points_[j].children.size()));
  }
  return n;
}

int Tfsdp::min_actions() const {
  if (decisions_.empty()) return 0;
  int n = std::numeric_limits<int>::max();
  for (int j : decisions_) {
    n = std::min(n, static_cast<int>(points_[j].children.size()));
  }
  return n;
}

int Tfsdp::FindDecision(std::string_view label) const {
  for (int j : decisions_) {
    if (points_[j].label == label) return j;
  }
  return -1;
}

int Tfsdp::FindSequence(std::string_view decision_label,
                        std::string_view action) const {
  const int j = FindDecision(decision_label);
  if (j < 0) return -1;
  const auto& p = points_[j];
  for (std::size_t a = 0; a < p.actions.size(); ++a) {
    if (p.actions[a] == action) return p.children[a];
  }
  return -1;
}

int Tfsdp::FindTerminal(std::string_view decision_label,
                        std::string_view action) const {
  const int s = FindSequence(decision_label, action);
  return s < 0 ? -1 : points_[s].terminal;
}

std::string Tfsdp::SequenceName(int h) const {
  if (h == root()) return "root";
  const auto& p = points_[h];
  if (p.kind == PointKind::kDecision) return p.label;
  const auto& parent = points_[p.parent];
  for (std::size_t a = 0; a < parent.children.size(); ++a) {
    if (parent.children[a] == h) return parent.label + ":" + parent.actions[a];
  }
  return "?";
}

bool Tfsdp::StructurallyEqual(const Tfsdp& other) const {
  if (points_.size() != other.points_.size()) return false;
  for (std::size_t h = 0; h < points_.size(); ++h) {
    const auto& a = points_[h];
    const auto& b = other.points_[h];
    if (a.kind != b.kind || a.children != b.children || a.parent != b.parent ||
        a.terminal != b.terminal || a.actions != b.actions ||
        (a.kind == PointKind::kDecision && a.label != b.label)) {
      return false;
    }
  }
  return true;
}

TfsdpBuilder::TfsdpBuilder() {
  Tfsdp::Point root;
  root.kind = PointKind::kObservation;
  root.label = "root";
  points_.push_back(std::move(root));
}

int TfsdpBuilder::AddDecision(int parent_sequence, std::string label,
                              bool synthetic) {
  if (parent_sequence < 0 ||
      parent_sequence >= static_cast<int>(points_.size()) ||
      points_[parent_sequence].kind != PointKind::kObservation) {
    throw std::invalid_argument("AddDecision: parent is not a sequence");
  }
  Tfsdp::Point p;
  p.kind = PointKind::kDecision;
  p.label = std::move(label);
  p.parent = parent_sequence;
  p.synthetic = synthetic;
  points_.push_back(std::move(p));
  const int id = static_cast<int>(points_.size()) - 1;
  points_[parent_sequence].children.push_back(id);
  return id;
}

int TfsdpBuilder::AddAction(int decision, std::string action) {
  if (decision < 0 || decision >= static_cast<int>(points_.size()) ||
      points_[decision].kind != PointKind::kDecision) {
    throw std::invalid_argument("AddAction: not a decision point");
  }
  Tfsdp::Point p;
  p.kind = PointKind::kObservation;
  p.parent = decision;
  p.label = points_[decision].label + ":" + action;
  points_.push_back(std::move(p));
  const int id = static_cast<int>(points_.size()) - 1;
  points_[decision].children.push_back(id);
  points_[decision].actions.push_back(std::move(action));
  return id;
}

Tfsdp TfsdpBuilder::Build(std::vector<int>* final_ids) const {
  // Renumber into depth-first pre-order.
  std::vector<int> order;
  order.reserve(points_.size());
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    const int h = stack.back();
    stack.pop_back();
    order.push_back(h);
    const auto& ch = points_[h].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  std::vector<int> new_id(points_.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = static_cast<int>(i);
  }

  Tfsdp t;
  t.points_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& src = points_[order[i]];
    auto& dst = t.points_[i];
    dst = src;
    dst.parent = src.parent < 0 ? -1 : new_id[src.parent];
    for (int& c : dst.children) c = new_id[c];
    dst.terminal = -1;
    if (dst.kind == PointKind::kDecision) {
      if (dst.children.empty()) {
        throw std::invalid_argument("decision point '" + dst.label +
                                    "' has no actions");
      }
      t.decisions_.push_back(static_cast<int>(i));
    } else if (dst.children.empty()) {
      dst.terminal = static_cast<int>(t.terminals_.size());
      t.terminals_.push_back(static_cast<int>(i));
    }
  }
  if (final_ids != nullptr) *final_ids = new_id;
  t.topo_order_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    t.topo_order_[i] = static_cast<int>(order.size() - 1 - i);
  }
  return t;
}

Extension Extend(const Tfsdp& tfsdp, std::span<const double> terminal_values,
                 Space space) {
  if (static_cast<int>(terminal_values.size()) != tfsdp.num_terminals()) {
    throw std::invalid_argument("Extend: dimension mismatch");
  }
  Extension ext;
  ext.values.assign(tfsdp.num_points(), 0.0);
  auto& v = ext.values;
  for (int h : tfsdp.topo_order()) {
    const auto& p = tfsdp.point(h);
    if (p.terminal >= 0) {
      v[h] = terminal_values[p.terminal];
      continue;
    }
    // Points whose children must sum vs. points whose children must agree.
    const bool sums = (space == Space::kStrategy) == (p.kind == PointKind::kDecision);
    if (sums) {
      double s = 0.0;
      for (int c : p.children) s += v[c];
      v[h] = s;
    } else {
      const double first = v[p.children.front()];
      for (int c : p.children) {
        ext.violation = std::max(ext.violation, std::abs(v[c] - first));
      }
      v[h] = first;
    }
  }
  return ext;
}

bool ValidateMembership(const Tfsdp& tfsdp, std::span<const double> values,
                        Space space, double tol) {
  if (static_cast<int>(values.size()) != tfsdp.num_terminals()) return false;
  for (double v : values) {
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) return false;
  }
  const Extension ext = Extend(tfsdp, values, space);
  return ext.violation <= tol && std::abs(ext.values[tfsdp.root()] - 1.0) <= tol;
}

Behavioral UniformBehavioral(const Tfsdp& tfsdp) {
  Behavioral b(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    const auto n = tfsdp.children(j).size();
    b[j].assign(n, 1.0 / static_cast<double>(n));
  }
  return b;
}

namespace {

void CheckBehavioral(const Tfsdp& tfsdp, const Behavioral& behavioral) {
  if (static_cast<int>(behavioral.size()) != tfsdp.num_points()) {
    throw std::invalid_argument("behavioral strategy has wrong size");
  }
  for (int j : tfsdp.decisions()) {
    const auto& d = behavioral[j];
    if (d.size() != tfsdp.children(j).size()) {
      throw std::invalid_argument("behavioral distribution at '" +
                                  tfsdp.label(j) + "' has wrong arity");
    }
    double s = 0.0;
    for (double p : d) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("behavioral distribution at '" +
                                    tfsdp.label(j) + "' has a negative entry");
      }
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12) {
      throw std::invalid_argument("behavioral distribution at '" +
                                  tfsdp.label(j) + "' does not sum to 1");
    }
  }
}

}  // namespace

std::vector<double> BehavioralReach(const Tfsdp& tfsdp,
                                    const Behavioral& behavioral) {
  CheckBehavioral(tfsdp, behavioral);
  std::vector<double> reach(tfsdp.num_points(), 0.0);
  reach[tfsdp.root()] = 1.0;
  // Pre-order ids: parents are visited first.
  for (int h = 1; h < tfsdp.num_points(); ++h) {
    const auto& p = tfsdp.point(h);
    const auto& parent = tfsdp.point(p.parent);
    if (parent.kind == PointKind::kObservation) {
      reach[h] = reach[p.parent];
    } else {
      const auto& ch = parent.children;
      const auto a = std::find(ch.begin(), ch.end(), h) - ch.begin();
      reach[h] = reach[p.parent] * behavioral[p.parent][a];
    }
  }
  return reach;
}

Strategy BehavioralToSequence(const Tfsdp& tfsdp, const Behavioral& behavioral) {
  const auto reach = BehavioralReach(tfsdp, behavioral);
  Strategy x(tfsdp.num_terminals());
  for (int e = 0; e < tfsdp.num_terminals(); ++e) {
    x[e] = reach[tfsdp.terminal_point(e)];
  }
  return x;
}

Behavioral SequenceToBehavioral(const Tfsdp& tfsdp, const Strategy& x) {
  if (!ValidateMembership(tfsdp, x, Space::kStrategy)) {
    throw std::invalid_argument("SequenceToBehavioral: not a valid strategy");
  }
  const auto ext = Extend(tfsdp, x, Space::kStrategy);
  Behavioral b(tfsdp.num_points());
  for (int j : tfsdp.decisions()) {
    const auto& ch = tfsdp.children(j);
    const double parent_reach = ext.values[tfsdp.parent(j)];
    b[j].resize(ch.size());
    if (parent_reach <= 1e-12) {
      std::fill(b[j].begin(), b[j].end(), 1.0 / static_cast<double>(ch.size()));
      continue;
    }
    double s = 0.0;
    for (std::size_t a = 0; a < ch.size(); ++a) {
      b[j][a] = std::max(0.0, ext.values[ch[a]]);
      s += b[j][a];
    }
    // Normalising by the children's own sum absorbs the tolerated slack.
    for (double& p : b[j]) p = s > 0.0 ? p / s : 1.0 / static_cast<double>(ch.size());
  }
  return b;
}

std::string WriteTfsdp(const Tfsdp& tfsdp) {
  std::ostringstream os;
  os << "tfsdp\n";
  for (int h = 0; h < tfsdp.num_points(); ++h) {
    const auto& p = tfsdp.point(h);
    os << "node " << h;
    if (p.kind == PointKind::kDecision) {
      os << " decision " << p.label << " actions";
      for (const auto& a : p.actions) os << ' ' << a;
      os << " children";
      for (int c : p.children) os << ' ' << c;
    } else if (p.children.empty()) {
      os << " terminal";
    } else {
      os << " observation children";
      for (int c : p.children) os << ' ' << c;
    }
    os << '\n';
  }
  return os.str();
}

Tfsdp ParseTfsdp(std::string_view text) {
  using internal::Token;
  const auto lines = internal::TokenizeLines(text);
  if (lines.empty() || lines[0][0].text != "tfsdp" || lines[0].size() != 1) {
    const int line = lines.empty() ? 1 : lines[0][0].line;
    throw ParseError("expected header 'tfsdp'", line, 1);
  }
  struct Raw {
    PointKind kind;
    std::string label;
    std::vector<std::string> actions;
    std::vector<Token> children;
    Token where;
  };
  std::vector<Raw> raws;
  std::unordered_map<std::string, int> index;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& tk = lines[li];
    if (tk[0].text != "node" || tk.size() < 3) {
      throw ParseError("expected 'node <id> <kind> ...'", tk[0].line,
                       tk[0].column);
    }
    Raw raw;
    raw.where = tk[1];
    const std::string& kind = tk[2].text;
    std::size_t i = 3;
    auto read_children = [&](std::size_t from) {
      if (from >= tk.size() || tk[from].text != "children") {
        const auto& at = from < tk.size() ? tk[from] : tk.back();
        throw ParseError("expected 'children'", at.line, at.column);
      }
      for (std::size_t k = from + 1; k < tk.size(); ++k) {
        raw.children.push_back(tk[k]);
      }
    };
    if (kind == "terminal") {
      raw.kind = PointKind::kObservation;
      if (tk.size() != 3) {
        throw ParseError("unexpected token after 'terminal'", tk[3].line,
                         tk[3].column);
      }
    } else if (kind == "observation") {
      raw.kind = PointKind::kObservation;
      read_children(i);
      if (raw.children.empty()) {
        throw ParseError("observation point without children (use terminal)",
                         tk[2].line, tk[2].column);
      }
    } else if (kind == "decision") {
      raw.kind = PointKind::kDecision;
      if (tk.size() < 5 || tk[4].text != "actions") {
        throw ParseError("expected 'decision <label> actions ...'", tk[2].line,
                         tk[2].column);
      }
      raw.label = tk[3].text;
      i = 5;
      while (i < tk.size() && tk[i].text != "children") {
        raw.actions.push_back(tk[i].text);
        ++i;
      }
      read_children(i);
      if (raw.actions.size() != raw.children.size() || raw.actions.empty()) {
        throw ParseError("decision point needs one child per action",
                         tk[2].line, tk[2].column);
      }
    } else {
      throw ParseError("unknown node kind '" + kind + "'", tk[2].line,
                       tk[2].column);
    }
    if (!index.emplace(raw.where.text, static_cast<int>(raws.size())).second) {
      throw ParseError("duplicate node id '" + raw.where.text + "'",
                       raw.where.line, raw.where.column);
    }
    raws.push_back(std::move(raw));
  }
  if (raws.empty()) throw ParseError("no nodes", 0, 0);
  if (raws[0].kind != PointKind::kObservation) {
    throw ParseError("root must be an observation point", raws[0].where.line,
                     raws[0].where.column);
  }

  TfsdpBuilder builder;
  std::vector<int> seen(raws.size(), 0);
  seen[0] = 1;
  // Recursive descent through the id graph, mapping raw ids to builder ids.
  auto resolve = [&](const Token& t) {
    auto it = index.find(t.text);
    if (it == index.end()) {
      throw ParseError("dangling child reference '" + t.text + "'", t.line,
                       t.column);
    }
    if (seen[it->second]++) {
      throw ParseError("node '" + t.text + "' has more than one parent",
                       t.line, t.column);
    }
    return it->second;
  };
  std::vector<std::pair<int, int>> stack = {{0, builder.root()}};
  while (!stack.empty()) {
    auto [r, b] = stack.back();
    stack.pop_back();
    const Raw& raw = raws[r];
    if (raw.kind == PointKind::kObservation) {
      for (const auto& c : raw.children) {
        const int cr = resolve(c);
        if (raws[cr].kind != PointKind::kDecision) {
          throw ParseError("observation children must be decision points",
                           c.line, c.column);
        }
        stack.push_back({cr, builder.AddDecision(b, raws[cr].label)});
      }
    } else {
      for (std::size_t a = 0; a < raw.children.size(); ++a) {
        const int cr = resolve(raw.children[a]);
        if (raws[cr].kind != PointKind::kObservation) {
          throw ParseError("decision children must be observation points",
                           raw.children[a].line, raw.children[a].column);
        }
        stack.push_back({cr, builder.AddAction(b, raw.actions[a])});
      }
    }
  }
  for (std::size_t r = 0; r < raws.size(); ++r) {
    if (!seen[r]) {
      throw ParseError("node '" + raws[r].where.text + "' is unreachable",
                       raws[r].where.line, raws[r].where.column);
    }
  }
  return builder.Build();
}

}  // namespace treeplex
