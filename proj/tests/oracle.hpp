#pragma once

// Brute-force reference implementations. They read automata only through
// their raw transition lists, never through the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <apdfilter/apdfilter.hpp>

namespace oracle {

using apd::FiniteAutomaton;
using apd::Symbol;
using apd::Word;

inline bool nfa_accepts(const FiniteAutomaton& fa, const Word& w) {
  std::vector<char> cur(fa.state_count(), 0);
  for (auto s : fa.starts()) cur[s] = 1;
  for (Symbol a : w) {
    std::vector<char> nxt(fa.state_count(), 0);
    for (const auto& t : fa.transitions())
      if (t.symbol == a && cur[t.from]) nxt[t.to] = 1;
    cur = std::move(nxt);
  }
  for (auto f : fa.finals())
    if (cur[f]) return true;
  return false;
}

/// Every word over {0..k-1} of length <= max_len, shortest first.
inline std::vector<Word> all_words(std::size_t k, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

inline std::set<Word> language(const FiniteAutomaton& fa, std::size_t max_len) {
  std::set<Word> out;
  for (auto& w : all_words(fa.alphabet().size(), max_len))
    if (nfa_accepts(fa, w)) out.insert(w);
  return out;
}

inline bool any_accepts(const std::vector<apd::Domain>& domains, const Word& w) {
  for (const auto& d : domains)
    if (nfa_accepts(d.automaton(), w)) return true;
  return false;
}

using Span = std::pair<std::size_t, std::size_t>;  // 1-based inclusive

/// ≺-maximal non-empty substrings of w accepted by some domain.
inline std::set<Span> maximal_substrings(const std::vector<apd::Domain>& domains, const Word& w) {
  std::vector<Span> accepted;
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (std::size_t j = i; j <= w.size(); ++j)
      if (any_accepts(domains, Word(w.begin() + i - 1, w.begin() + j))) accepted.push_back({i, j});
  std::set<Span> out;
  for (const auto& a : accepted) {
    bool maximal = true;
    for (const auto& b : accepted)
      if (b != a && b.first <= a.first && a.second <= b.second) maximal = false;
    if (maximal) out.insert(a);
  }
  return out;
}

inline std::set<Span> maximal_of(const std::set<Span>& spans) {
  std::set<Span> out;
  for (const auto& a : spans) {
    bool maximal = true;
    for (const auto& b : spans)
      if (b != a && b.first <= a.first && a.second <= b.second) maximal = false;
    if (maximal) out.insert(a);
  }
  return out;
}

inline Word repeat(const Word& period, std::size_t length) {
  Word w(length);
  for (std::size_t i = 0; i < length; ++i) w[i] = period[i % period.size()];
  return w;
}

inline Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t len) {
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(k - 1));
  Word w(len);
  for (auto& x : w) x = sym(rng);
  return w;
}

/// Random NFA with 1..max_states states over `alphabet`.
inline FiniteAutomaton random_nfa(std::mt19937_64& rng, const apd::Alphabet& alphabet, std::size_t max_states) {
  std::uniform_int_distribution<std::size_t> count(1, max_states);
  std::bernoulli_distribution coin(0.3), edge(0.35);
  const std::size_t n = count(rng);
  apd::StateSet starts, finals;
  std::vector<apd::Transition> t;
  for (apd::StateId s = 0; s < n; ++s) {
    if (coin(rng)) starts.push_back(s);
    if (coin(rng)) finals.push_back(s);
    for (Symbol a = 0; a < alphabet.size(); ++a)
      for (apd::StateId d = 0; d < n; ++d)
        if (edge(rng)) t.push_back({s, a, d});
  }
  if (starts.empty()) starts.push_back(0);
  return {alphabet, n, starts, finals, t};
}

/// States reachable from the starts by some word of length exactly l.
inline std::set<apd::StateId> reachable_in(const FiniteAutomaton& fa, std::size_t l) {
  std::set<apd::StateId> cur(fa.starts().begin(), fa.starts().end());
  for (std::size_t i = 0; i < l; ++i) {
    std::set<apd::StateId> nxt;
    for (const auto& t : fa.transitions())
      if (cur.count(t.from)) nxt.insert(t.to);
    cur = std::move(nxt);
  }
  return cur;
}

/// Direct CA update: neighborhood digits form a base-k number, looked up as a
/// digit of the rule number.
inline Word ca_step(std::size_t k, std::size_t r, const apd::ca::BigInt& number, const Word& row) {
  const std::size_t n = row.size();
  Word out(n);
  for (std::size_t x = 0; x < n; ++x) {
    apd::ca::BigInt idx = 0;
    for (std::size_t d = 0; d < 2 * r + 1; ++d) idx = idx * k + row[(x + n + d - r) % n];
    apd::ca::BigInt v = number;
    for (apd::ca::BigInt i = 0; i < idx; ++i) v /= k;
    out[x] = static_cast<Symbol>(v % k);
  }
  return out;
}

}  // namespace oracle
