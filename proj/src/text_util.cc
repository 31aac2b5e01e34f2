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

#include "text_util.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "treeplex/vectors.h"

namespace treeplex::internal {

std::vector<std::vector<Token>> TokenizeLines(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
        ++i;
      }
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r') {
        ++j;
      }
      tokens.push_back({std::string(line.substr(i, j - i)), line_no,
                        static_cast<int>(i) + 1});
      i = j;
    }
    if (!tokens.empty() && tokens.front().text[0] != '#') {
      lines.push_back(std::move(tokens));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

namespace {

bool ParseDecimal(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

double ParseReal(const Token& token) {
  const std::string_view s = token.text;
  const std::size_t slash = s.find('/');
  double value = 0.0;
  if (slash == std::string_view::npos) {
    if (ParseDecimal(s, value)) return value;
  } else {
    double num = 0.0;
    double den = 0.0;
    if (ParseDecimal(s.substr(0, slash), num) &&
        ParseDecimal(s.substr(slash + 1), den) && den != 0.0) {
      return num / den;
    }
  }
  throw ParseError("expected a real number, got '" + token.text + "'",
                   token.line, token.column);
}

int ParseInt(const Token& token) {
  int value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, got '" + token.text + "'",
                     token.line, token.column);
  }
  return value;
}

std::string FormatReal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace treeplex::internal
