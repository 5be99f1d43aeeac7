#pragma once

#include <string>
#include <vector>

#include "automaton.hpp"
#include "operations.hpp"

namespace apd {

/// Recurrent domains must be strongly connected. Split domains produced by the
/// optimizer keep their transient states, so only the local shape is checked.
enum class DomainKind { recurrent, split };

class DomainError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool strongly_connected(const FiniteAutomaton& fa) {
  const std::size_t n = fa.state_count();
  if (n == 0) return false;
  auto forward = reachable(fa.with_starts({0}));
  std::vector<Transition> reversed;
  for (const auto& t : fa.transitions()) reversed.push_back({t.to, t.symbol, t.from});
  FiniteAutomaton back(fa.alphabet(), n, {0}, {}, std::move(reversed));
  auto backward = reachable(back);
  for (std::size_t s = 0; s < n; ++s)
    if (!forward[s] || !backward[s]) return false;
  return true;
}

}  // namespace detail

/// A regular domain: semi-deterministic, every state both start and final, and
/// (for recurrent domains) strongly connected.
class Domain {
 public:
  Domain(std::string name, FiniteAutomaton automaton, std::vector<std::string> state_names = {},
         DomainKind kind = DomainKind::recurrent)
      : name_(std::move(name)), automaton_(std::move(automaton)), state_names_(std::move(state_names)), kind_(kind) {
    const std::size_t n = automaton_.state_count();
    if (state_names_.empty())
      for (std::size_t s = 0; s < n; ++s) state_names_.push_back(std::to_string(s));
    if (state_names_.size() != n) throw DomainError("domain " + name_ + ": state name count mismatch");
    if (n == 0) throw DomainError("domain " + name_ + ": no states");
    if (!automaton_.semi_deterministic())
      throw DomainError("domain " + name_ + ": not semi-deterministic");
    if (automaton_.starts() != all_states(n)) throw DomainError("domain " + name_ + ": not every state is a start state");
    if (automaton_.finals() != all_states(n)) throw DomainError("domain " + name_ + ": not every state is final");
    if (kind_ == DomainKind::recurrent && !detail::strongly_connected(automaton_))
      throw DomainError("domain " + name_ + ": not strongly connected");
  }

  const std::string& name() const noexcept { return name_; }
  const FiniteAutomaton& automaton() const noexcept { return automaton_; }
  const std::vector<std::string>& state_names() const noexcept { return state_names_; }
  DomainKind kind() const noexcept { return kind_; }
  std::size_t state_count() const noexcept { return automaton_.state_count(); }
  const Alphabet& alphabet() const noexcept { return automaton_.alphabet(); }

 private:
  std::string name_;
  FiniteAutomaton automaton_;
  std::vector<std::string> state_names_;
  DomainKind kind_;
};

/// Domain accepting the subwords of the bi-infinite repetition of `word`:
/// a directed cycle i --word[i]--> i+1 (mod |word|).
inline Domain cyclic_domain(const Alphabet& alphabet, const Word& word, std::string name = "cyclic") {
  if (word.empty()) throw DomainError("cyclic domain needs a non-empty word");
  const std::size_t n = word.size();
  std::vector<Transition> t;
  for (std::size_t i = 0; i < n; ++i) {
    if (word[i] >= alphabet.size()) throw DomainError("cyclic word symbol out of range");
    t.push_back({static_cast<StateId>(i), word[i], static_cast<StateId>((i + 1) % n)});
  }
  return Domain(std::move(name), FiniteAutomaton(alphabet, n, all_states(n), all_states(n), std::move(t)));
}

inline Domain cyclic_domain(const Alphabet& alphabet, std::string_view word, std::string name = "cyclic") {
  return cyclic_domain(alphabet, alphabet.encode(word), std::move(name));
}

/// Domain with every transition reversed; reading it left to right filters the
/// mirrored string. Fails when the reversal is not semi-deterministic.
inline Domain reversed(const Domain& d) {
  std::vector<Transition> t;
  for (const auto& x : d.automaton().transitions()) t.push_back({x.to, x.symbol, x.from});
  const auto& fa = d.automaton();
  FiniteAutomaton rev(fa.alphabet(), fa.state_count(), fa.starts(), fa.finals(), std::move(t));
  if (!rev.semi_deterministic())
    throw DomainError("domain " + d.name() + " not reversible; use stack filter");
  return Domain(d.name(), std::move(rev), d.state_names(), d.kind());
}

inline std::vector<FiniteAutomaton> automata_of(const std::vector<Domain>& domains) {
  std::vector<FiniteAutomaton> out;
  for (const auto& d : domains) out.push_back(d.automaton());
  return out;
}

/// D_1 ⊔ ... ⊔ D_n with origin tags naming the domain of each state.
inline FiniteAutomaton domain_union(const std::vector<Domain>& domains) {
  if (domains.empty()) throw DomainError("at least one domain is required");
  auto parts = automata_of(domains);
  return disjoint_union(parts);
}

inline std::size_t max_state_count(const std::vector<Domain>& domains) {
  std::size_t m = 0;
  for (const auto& d : domains) m = std::max(m, d.state_count());
  return m;
}

}  // namespace apd
