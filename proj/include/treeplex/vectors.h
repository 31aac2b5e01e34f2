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

#ifndef TREEPLEX_VECTORS_H_
#define TREEPLEX_VECTORS_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treeplex {

// Dense real vector indexed by the terminal sequences of a TFSDP. The tag
// keeps strategies, kernels and reward vectors from being mixed up.
template <typename Tag>
struct TerminalVector {
  std::vector<double> values;

  TerminalVector() = default;
  explicit TerminalVector(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit TerminalVector(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<const double> span() const { return values; }
  operator std::span<const double>() const { return values; }

  friend bool operator==(const TerminalVector&, const TerminalVector&) = default;
};

using Strategy = TerminalVector<struct StrategyTag>;
using Kernel = TerminalVector<struct KernelTag>;
using RewardVector = TerminalVector<struct RewardTag>;

double Dot(std::span<const double> a, std::span<const double> b);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Entrywise compensated accumulator for terminal vectors.
class CompensatedVectorSum {
 public:
  explicit CompensatedVectorSum(std::size_t n = 0) : sums_(n) {}
  void Add(std::span<const double> v);
  std::size_t size() const { return sums_.size(); }
  std::vector<double> values() const;

 private:
  std::vector<CompensatedSum> sums_;
};

// Error raised by the text parsers. Line and column are 1-based; both are 0
// for semantic errors that are not tied to a token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace treeplex

#endif  // TREEPLEX_VECTORS_H_
