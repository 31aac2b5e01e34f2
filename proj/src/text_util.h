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

#ifndef TREEPLEX_SRC_TEXT_UTIL_H_
#define TREEPLEX_SRC_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace treeplex::internal {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

// Splits a document into whitespace-separated tokens per line. Blank lines
// and lines starting with '#' are dropped.
std::vector<std::vector<Token>> TokenizeLines(std::string_view text);

// Parses a decimal real or a rational "p/q". Throws ParseError at the token.
double ParseReal(const Token& token);
int ParseInt(const Token& token);

// Shortest round-trippable decimal form.
std::string FormatReal(double v);

}  // namespace treeplex::internal

#endif  // TREEPLEX_SRC_TEXT_UTIL_H_
