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

#ifndef TREEPLEX_NORMS_H_
#define TREEPLEX_NORMS_H_

#include <span>
#include <vector>

#include "treeplex/tfsdp.h"
#include "treeplex/vectors.h"

namespace treeplex {

// Scratch buffer for the norm recursions, one slot per point. Contents are
// meaningless between calls; use one per thread.
class NormWorkspace {
 public:
  std::vector<double>& Get(const Tfsdp& tfsdp) {
    buffer_.resize(tfsdp.num_points());
    return buffer_;
  }

 private:
  std::vector<double> buffer_;
};

// sup over kernels y of <|u|, y>: sum at decision points, max at
// observation points. Throws std::invalid_argument on dimension mismatch.
double NormL1(const Tfsdp& tfsdp, std::span<const double> u,
              NormWorkspace* workspace = nullptr);
// sup over strategies x of <|u|, x>: max at decision points, sum at
// observation points.
double NormLinf(const Tfsdp& tfsdp, std::span<const double> u,
                NormWorkspace* workspace = nullptr);

enum class NormKind { kL1, kLinf };

// Definitional value by enumerating kernels (kL1) or vertices (kLinf).
// Throws CapExceeded when enumeration is too large.
double NormOracle(const Tfsdp& tfsdp, std::span<const double> u, NormKind which,
                  std::size_t cap = 100000);

// Vertex attaining NormLinf(u) (lowest index on ties) with each reached
// terminal multiplied by sign(u). For u != 0 it has unit treeplex l1 norm
// and <u, v> = NormLinf(u).
std::vector<double> LinfCertificate(const Tfsdp& tfsdp,
                                    std::span<const double> u);

}  // namespace treeplex

#endif  // TREEPLEX_NORMS_H_
