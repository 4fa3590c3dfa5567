// Copyright 2026 The tierbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tierbench::mutate {

enum class CobolTokenKind {
  kKeyword,
  kIdentifier,
  kLiteral,
  kOperator,
  kPunctuation,
  kParagraphName,
  kComment,
  kWhitespace,
};

std::string_view to_string(CobolTokenKind kind);

struct CobolToken {
  CobolTokenKind kind = CobolTokenKind::kWhitespace;
  std::string text;
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  std::size_t offset = 0;

  bool operator==(const CobolToken&) const = default;
};

// Case-insensitive reserved-word set.
class KeywordTable {
 public:
  // Parses one word per line; blank lines and '#' comments are skipped.
  explicit KeywordTable(std::string_view text);

  // The table shipped as data/cobol_keywords.txt.
  static const KeywordTable& builtin();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;  // upper case
};

// Lossless free-format scan: concatenating the token texts reproduces
// `source` exactly. "*>" starts a comment running to the end of the line,
// the picture string after PIC/PICTURE is one literal, and a non-keyword word
// that opens a line of the procedure area and is followed by "." is a
// paragraph name. The procedure area starts after PROCEDURE DIVISION, or
// covers the whole text when that header is absent.
std::vector<CobolToken> scan(std::string_view source,
                             const KeywordTable& keywords = KeywordTable::builtin());

}  // namespace tierbench::mutate
