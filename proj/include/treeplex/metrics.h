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

#ifndef TREEPLEX_METRICS_H_
#define TREEPLEX_METRICS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeplex/tfsdp.h"

namespace treeplex {

using BigInt = boost::multiprecision::cpp_int;

// Structural measures of every subtree, indexed by point id.
struct SubtreeMetrics {
  // Maximum number of terminal sequences a pure strategy reaches.
  std::vector<std::int64_t> leaf_count;
  // Maximum number of sequences (the subtree root included when it is a
  // sequence) a pure strategy reaches.
  std::vector<std::int64_t> seq_count;
  // Number of reduced pure strategies.
  std::vector<BigInt> vertex_count;
  // Natural log of vertex_count, computed in floating point.
  std::vector<double> log_vertex_count;
};

SubtreeMetrics ComputeMetrics(const Tfsdp& tfsdp);

std::int64_t LeafCount(const Tfsdp& tfsdp);
std::int64_t TreeSize(const Tfsdp& tfsdp);
BigInt VertexCount(const Tfsdp& tfsdp);
double LogVertexCount(const Tfsdp& tfsdp);
// Number of deterministic transition kernels.
BigInt KernelCount(const Tfsdp& tfsdp);

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All pure strategies, depth-first in action-index order. Throws
// CapExceeded when there are more than `cap`.
std::vector<Strategy> EnumerateVertices(const Tfsdp& tfsdp,
                                        std::size_t cap = 100000);
// All deterministic kernels (one child chosen at every observation point),
// depth-first in child order.
std::vector<Kernel> EnumerateKernels(const Tfsdp& tfsdp,
                                     std::size_t cap = 100000);

struct Normalization {
  Tfsdp tfsdp;
  // Number of observation points eliminated.
  int eliminated = 0;
  // New terminal index -> original terminal index.
  std::vector<int> terminal_map;
};

// Eliminates every non-root observation point with exactly one child
// decision point by folding that child's actions into the parent decision
// point. Composite actions are labelled "parentAction/childAction". The
// strategy polytope is unchanged up to terminal_map.
Normalization NormalizeObservations(const Tfsdp& tfsdp);

// True when no non-root, non-terminal sequence has exactly one child.
bool IsNormalized(const Tfsdp& tfsdp);

}  // namespace treeplex

#endif  // TREEPLEX_METRICS_H_
