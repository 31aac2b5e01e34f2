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

#include "treeplex/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace treeplex {

SubtreeMetrics ComputeMetrics(const Tfsdp& tfsdp) {
  const int n = tfsdp.num_points();
  SubtreeMetrics m;
  m.leaf_count.assign(n, 0);
  m.seq_count.assign(n, 0);
  m.vertex_count.assign(n, BigInt(1));
  m.log_vertex_count.assign(n, 0.0);
  for (int h : tfsdp.topo_order()) {
    const auto& ch = tfsdp.children(h);
    if (tfsdp.is_terminal(h)) {
      m.leaf_count[h] = 1;
      m.seq_count[h] = 1;
      continue;
    }
    if (tfsdp.is_decision(h)) {
      // A pure strategy picks one action: max for reach-based counts, sum of
      // alternatives for the strategy count.
      BigInt v = 0;
      double max_log = -std::numeric_limits<double>::infinity();
      for (int c : ch) {
        m.leaf_count[h] = std::max(m.leaf_count[h], m.leaf_count[c]);
        m.seq_count[h] = std::max(m.seq_count[h], m.seq_count[c]);
        v += m.vertex_count[c];
        max_log = std::max(max_log, m.log_vertex_count[c]);
      }
      double s = 0.0;
      for (int c : ch) s += std::exp(m.log_vertex_count[c] - max_log);
      m.vertex_count[h] = std::move(v);
      m.log_vertex_count[h] = max_log + std::log(s);
    } else {
      // Every outcome of an observation point is reached together.
      BigInt v = 1;
      m.seq_count[h] = 1;
      for (int c : ch) {
        m.leaf_count[h] += m.leaf_count[c];
        m.seq_count[h] += m.seq_count[c];
        v *= m.vertex_count[c];
        m.log_vertex_count[h] += m.log_vertex_count[c];
      }
      m.vertex_count[h] = std::move(v);
    }
  }
  return m;
}

std::int64_t LeafCount(const Tfsdp& tfsdp) {
  return ComputeMetrics(tfsdp).leaf_count[tfsdp.root()];
}

std::int64_t TreeSize(const Tfsdp& tfsdp) {
  return ComputeMetrics(tfsdp).seq_count[tfsdp.root()];
}

BigInt VertexCount(const Tfsdp& tfsdp) {
  return ComputeMetrics(tfsdp).vertex_count[tfsdp.root()];
}

double LogVertexCount(const Tfsdp& tfsdp) {
  return ComputeMetrics(tfsdp).log_vertex_count[tfsdp.root()];
}

BigInt KernelCount(const Tfsdp& tfsdp) {
  std::vector<BigInt> k(tfsdp.num_points(), BigInt(1));
  for (int h : tfsdp.topo_order()) {
    if (tfsdp.is_terminal(h)) continue;
    BigInt v = tfsdp.is_decision(h) ? BigInt(1) : BigInt(0);
    for (int c : tfsdp.children(h)) {
      if (tfsdp.is_decision(h)) {
        v *= k[c];
      } else {
        v += k[c];
      }
    }
    k[h] = std::move(v);
  }
  return k[tfsdp.root()];
}

namespace {

using Support = std::vector<int>;

// Sets of terminal indices, combined either as alternatives or as a
// cartesian product of independent parts.
std::vector<Support> Product(const std::vector<std::vector<Support>>& parts) {
  std::vector<Support> acc = {Support{}};
  for (const auto& part : parts) {
    std::vector<Support> next;
    next.reserve(acc.size() * part.size());
    for (const auto& a : acc) {
      for (const auto& b : part) {
        Support s = a;
        s.insert(s.end(), b.begin(), b.end());
        next.push_back(std::move(s));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<Support> Enumerate(const Tfsdp& tfsdp, bool kernels) {
  std::vector<std::vector<Support>> sets(tfsdp.num_points());
  for (int h : tfsdp.topo_order()) {
    if (tfsdp.is_terminal(h)) {
      sets[h] = {Support{tfsdp.terminal_index(h)}};
      continue;
    }
    const auto& ch = tfsdp.children(h);
    // Strategies choose at decision points; kernels choose at observation
    // points.
    const bool choose = tfsdp.is_decision(h) != kernels;
    if (choose) {
      for (int c : ch) {
        sets[h].insert(sets[h].end(), sets[c].begin(), sets[c].end());
      }
    } else {
      std::vector<std::vector<Support>> parts;
      for (int c : ch) parts.push_back(sets[c]);
      sets[h] = Product(parts);
    }
    for (int c : ch) {
      sets[c].clear();
      sets[c].shrink_to_fit();
    }
  }
  return std::move(sets[tfsdp.root()]);
}

template <typename Vec>
std::vector<Vec> ToVectors(const Tfsdp& tfsdp,
                           const std::vector<Support>& supports) {
  std::vector<Vec> out;
  out.reserve(supports.size());
  for (const auto& s : supports) {
    Vec v(tfsdp.num_terminals());
    for (int e : s) v[e] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Strategy> EnumerateVertices(const Tfsdp& tfsdp, std::size_t cap) {
  if (VertexCount(tfsdp) > cap) {
    throw CapExceeded("vertex enumeration exceeds cap " + std::to_string(cap));
  }
  return ToVectors<Strategy>(tfsdp, Enumerate(tfsdp, false));
}

std::vector<Kernel> EnumerateKernels(const Tfsdp& tfsdp, std::size_t cap) {
  if (KernelCount(tfsdp) > cap) {
    throw CapExceeded("kernel enumeration exceeds cap " + std::to_string(cap));
  }
  return ToVectors<Kernel>(tfsdp, Enumerate(tfsdp, true));
}

bool IsNormalized(const Tfsdp& tfsdp) {
  for (int h = 1; h < tfsdp.num_points(); ++h) {
    if (!tfsdp.is_decision(h) && tfsdp.children(h).size() == 1) return false;
  }
  return true;
}

namespace {

class Normalizer {
 public:
  explicit Normalizer(const Tfsdp& src) : src_(src) {}

  Normalization Run() {
    CopyChildren(src_.root(), builder_.root());
    Normalization out;
    std::vector<int> final_ids;
    out.tfsdp = builder_.Build(&final_ids);
    out.eliminated = eliminated_;
    out.terminal_map.assign(out.tfsdp.num_terminals(), -1);
    for (const auto& [built, original] : terminal_pairs_) {
      out.terminal_map[out.tfsdp.terminal_index(final_ids[built])] = original;
    }
    return out;
  }

 private:
  struct Expanded {
    std::string label;
    int sequence;  // source sequence whose children the action inherits
  };

  // Actions exposed by taking `action` at source decision point `j`: the
  // action itself, or the composite actions through every chain of
  // single-outcome observation points below it.
  void Expand(int j, std::size_t action, const std::string& prefix,
              std::vector<Expanded>& out) {
    const int seq = src_.children(j)[action];
    const std::string label = prefix + src_.point(j).actions[action];
    const auto& ch = src_.children(seq);
    if (ch.size() == 1) {
      ++eliminated_;
      const int next = ch.front();
      for (std::size_t a = 0; a < src_.children(next).size(); ++a) {
        Expand(next, a, label + "/", out);
      }
      return;
    }
    out.push_back({label, seq});
  }

  void CopyChildren(int src_seq, int dst_seq) {
    const auto& ch = src_.children(src_seq);
    if (ch.empty()) {
      terminal_pairs_.emplace_back(dst_seq, src_.terminal_index(src_seq));
      return;
    }
    for (int j : ch) {
      const auto& p = src_.point(j);
      const int d = builder_.AddDecision(dst_seq, p.label, p.synthetic);
      std::vector<Expanded> actions;
      for (std::size_t a = 0; a < p.children.size(); ++a) {
        Expand(j, a, "", actions);
      }
      for (const auto& e : actions) {
        CopyChildren(e.sequence, builder_.AddAction(d, e.label));
      }
    }
  }

  const Tfsdp& src_;
  TfsdpBuilder builder_;
  int eliminated_ = 0;
  std::vector<std::pair<int, int>> terminal_pairs_;
};

}  // namespace

Normalization NormalizeObservations(const Tfsdp& tfsdp) {
  return Normalizer(tfsdp).Run();
}

}  // namespace treeplex
