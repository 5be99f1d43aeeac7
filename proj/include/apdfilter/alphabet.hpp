#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace apd {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered set of printable tokens. Symbol indices are dense 0..size()-1.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("alphabet must not be empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto& s = symbols_[i];
      if (s.empty()) throw Error("alphabet symbols must be non-empty");
      for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',')
          throw Error("alphabet symbol '" + s + "' contains a separator");
      }
      if (!index_.emplace(s, static_cast<Symbol>(i)).second)
        throw Error("duplicate alphabet symbol '" + s + "'");
    }
  }

  /// Alphabet {"0", "1", ..., "k-1"}.
  static Alphabet digits(std::size_t k) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < k; ++i) symbols.push_back(std::to_string(i));
    return Alphabet(std::move(symbols));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& token(Symbol a) const { return symbols_.at(a); }

  std::optional<Symbol> find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Symbol index(std::string_view token) const {
    auto found = find(token);
    if (!found) throw Error("unknown symbol '" + std::string(token) + "'");
    return *found;
  }

  /// True when every token is a single character, so strings need no separators.
  bool single_char() const noexcept {
    for (const auto& s : symbols_)
      if (s.size() != 1) return false;
    return true;
  }

  /// Splits text into symbols. Single-character alphabets read one symbol per
  /// non-blank character; otherwise tokens are whitespace separated.
  Word encode(std::string_view text) const {
    Word out;
    if (single_char()) {
      for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        out.push_back(index(std::string_view(&c, 1)));
      }
      return out;
    }
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(index(tok));
    return out;
  }

  std::string decode(std::span<const Symbol> word) const {
    std::string out;
    const bool compact = single_char();
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (!compact && i > 0) out += ' ';
      out += token(word[i]);
    }
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Symbol, std::less<>> index_;
};

}  // namespace apd
