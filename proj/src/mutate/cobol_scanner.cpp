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

#include "tierbench/mutate/cobol_scanner.hpp"

#include <algorithm>
#include <cctype>

#include "tierbench/util/resources.hpp"
#include "tierbench/util/text.hpp"

namespace tierbench::mutate {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c) { return is_alnum(c) || c == '-' || c == '_'; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

class Scanner {
 public:
  Scanner(std::string_view src, const KeywordTable& keywords) : src_(src), keywords_(keywords) {}

  std::vector<CobolToken> run() {
    while (pos_ < src_.size()) next();
    classify_paragraphs();
    return std::move(tokens_);
  }

 private:
  void emit(CobolTokenKind kind, std::size_t len) {
    CobolToken tok{kind, std::string(src_.substr(pos_, len)), line_, column_, pos_};
    for (char c : tok.text) {
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
    pos_ += len;
    tokens_.push_back(std::move(tok));
  }

  std::size_t run_while(std::size_t from, bool (*pred)(char)) const {
    std::size_t end = from;
    while (end < src_.size() && pred(src_[end])) ++end;
    return end;
  }

  void next() {
    const char c = src_[pos_];
    if (is_space(c)) {
      emit(CobolTokenKind::kWhitespace, run_while(pos_, is_space) - pos_);
      return;
    }
    if (src_.substr(pos_, 2) == "*>") {
      const auto eol = src_.find('\n', pos_);
      emit(CobolTokenKind::kComment, (eol == std::string_view::npos ? src_.size() : eol) - pos_);
      return;
    }
    if (picture_pending_) {
      scan_picture();
      return;
    }
    if (c == '"' || c == '\'') {
      scan_string(c);
      return;
    }
    if (is_alnum(c)) {
      scan_word();
      return;
    }
    scan_symbol();
  }

  void scan_picture() {
    std::size_t end = pos_;
    while (end < src_.size() && !is_space(src_[end])) ++end;
    const auto word = src_.substr(pos_, end - pos_);
    if (iequals(word, "IS")) {
      emit(CobolTokenKind::kKeyword, word.size());
      return;
    }
    picture_pending_ = false;
    // A trailing period ends the sentence rather than the picture.
    std::size_t len = word.size();
    if (len > 1 && word.back() == '.') --len;
    emit(CobolTokenKind::kLiteral, len);
  }

  void scan_string(char quote) {
    std::size_t end = pos_ + 1;
    while (end < src_.size() && src_[end] != '\n') {
      if (src_[end] == quote) {
        if (end + 1 < src_.size() && src_[end + 1] == quote) {
          end += 2;  // doubled quote inside the literal
          continue;
        }
        ++end;
        break;
      }
      ++end;
    }
    emit(CobolTokenKind::kLiteral, end - pos_);
  }

  void scan_word() {
    std::size_t end = run_while(pos_, is_word_char);
    while (end > pos_ + 1 && src_[end - 1] == '-') --end;
    const auto word = src_.substr(pos_, end - pos_);
    const bool numeric = std::all_of(word.begin(), word.end(), is_digit);
    if (numeric) {
      if (end + 1 < src_.size() && src_[end] == '.' && is_digit(src_[end + 1])) {
        end = run_while(end + 1, is_digit);
      }
      emit(CobolTokenKind::kLiteral, end - pos_);
      return;
    }
    if (keywords_.contains(word)) {
      if (iequals(word, "PIC") || iequals(word, "PICTURE")) picture_pending_ = true;
      emit(CobolTokenKind::kKeyword, word.size());
      return;
    }
    emit(CobolTokenKind::kIdentifier, word.size());
  }

  void scan_symbol() {
    static constexpr std::string_view kTwoCharOps[] = {"<=", ">=", "<>", "**"};
    for (auto op : kTwoCharOps) {
      if (src_.substr(pos_, 2) == op) {
        emit(CobolTokenKind::kOperator, 2);
        return;
      }
    }
    const char c = src_[pos_];
    if (std::string_view("=<>+-*/").find(c) != std::string_view::npos) {
      emit(CobolTokenKind::kOperator, 1);
      return;
    }
    if (std::string_view(".,;:()").find(c) != std::string_view::npos) {
      emit(CobolTokenKind::kPunctuation, 1);
      return;
    }
    // Anything else (including a whole UTF-8 sequence) is kept as a literal.
    std::size_t end = pos_ + 1;
    while (end < src_.size() && (static_cast<unsigned char>(src_[end]) & 0xC0) == 0x80) ++end;
    emit(CobolTokenKind::kLiteral, end - pos_);
  }

  bool starts_line(std::size_t index) const {
    for (std::size_t j = index; j-- > 0;) {
      const auto& t = tokens_[j];
      if (t.kind != CobolTokenKind::kWhitespace) return false;
      if (t.text.find('\n') != std::string::npos) return true;
    }
    return true;
  }

  std::size_t next_significant(std::size_t index, bool same_line) const {
    for (std::size_t j = index + 1; j < tokens_.size(); ++j) {
      const auto& t = tokens_[j];
      if (t.kind != CobolTokenKind::kWhitespace) return j;
      if (same_line && t.text.find('\n') != std::string::npos) break;
    }
    return tokens_.size();
  }

  std::size_t procedure_area_start() const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].kind != CobolTokenKind::kKeyword || !iequals(tokens_[i].text, "PROCEDURE")) {
        continue;
      }
      const auto j = next_significant(i, false);
      if (j < tokens_.size() && iequals(tokens_[j].text, "DIVISION")) return j + 1;
    }
    return 0;
  }

  void classify_paragraphs() {
    for (std::size_t i = procedure_area_start(); i < tokens_.size(); ++i) {
      if (tokens_[i].kind != CobolTokenKind::kIdentifier || !starts_line(i)) continue;
      const auto j = next_significant(i, true);
      if (j < tokens_.size() && tokens_[j].text == ".") {
        tokens_[i].kind = CobolTokenKind::kParagraphName;
      }
    }
  }

  std::string_view src_;
  const KeywordTable& keywords_;
  std::vector<CobolToken> tokens_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool picture_pending_ = false;
};

}  // namespace

std::string_view to_string(CobolTokenKind kind) {
  switch (kind) {
    case CobolTokenKind::kKeyword:
      return "keyword";
    case CobolTokenKind::kIdentifier:
      return "identifier";
    case CobolTokenKind::kLiteral:
      return "literal";
    case CobolTokenKind::kOperator:
      return "operator";
    case CobolTokenKind::kPunctuation:
      return "punctuation";
    case CobolTokenKind::kParagraphName:
      return "paragraph-name";
    case CobolTokenKind::kComment:
      return "comment";
    case CobolTokenKind::kWhitespace:
      return "whitespace";
  }
  return "unknown";
}

KeywordTable::KeywordTable(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    const auto words = util::split_whitespace(line);
    if (words.empty() || words.front().starts_with('#')) continue;
    words_.insert(util::to_upper(words.front()));
  }
}

const KeywordTable& KeywordTable::builtin() {
  static const KeywordTable table(util::resource("cobol_keywords.txt"));
  return table;
}

bool KeywordTable::contains(std::string_view word) const {
  return words_.contains(util::to_upper(word));
}

std::vector<CobolToken> scan(std::string_view source, const KeywordTable& keywords) {
  return Scanner(source, keywords).run();
}

}  // namespace tierbench::mutate
