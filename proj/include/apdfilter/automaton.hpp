#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "alphabet.hpp"
#include "error.hpp"

namespace apd {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Sorted, duplicate-free list of state ids.
using StateSet = std::vector<StateId>;

struct Transition {
  StateId from;
  Symbol symbol;
  StateId to;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Records which states of the pre-determinization automaton a state stands for.
struct SubsetTag {
  StateSet states;
  friend bool operator==(const SubsetTag&, const SubsetTag&) = default;
};

/// Records the factor states a product state was built from.
struct ProductTag {
  StateId left;
  StateId right;
  friend bool operator==(const ProductTag&, const ProductTag&) = default;
};

/// Records which input automaton (and which of its states) a union state came from.
struct OriginTag {
  std::size_t automaton;
  StateId state;
  friend bool operator==(const OriginTag&, const OriginTag&) = default;
};

using StateTags = std::variant<std::monostate, std::vector<SubsetTag>, std::vector<ProductTag>,
                               std::vector<OriginTag>>;

namespace detail {

inline StateSet normalized(StateSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const StateSet& set, StateId s) {
  return std::binary_search(set.begin(), set.end(), s);
}

template <class T>
std::size_t tag_count(const StateTags& tags) {
  if (auto* v = std::get_if<std::vector<T>>(&tags)) return v->size();
  return 0;
}

}  // namespace detail

/// Nondeterministic finite automaton without epsilon transitions.
///
/// Values are immutable once constructed. Transitions are kept sorted by
/// (source, symbol, target), which doubles as a compressed adjacency table.
class FiniteAutomaton {
 public:
  FiniteAutomaton(Alphabet alphabet, std::size_t state_count, StateSet starts, StateSet finals,
                  std::vector<Transition> transitions, StateTags tags = {})
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        starts_(detail::normalized(std::move(starts))),
        finals_(detail::normalized(std::move(finals))),
        transitions_(std::move(transitions)),
        tags_(std::move(tags)) {
    if (state_count_ >= kNoState) throw Error("too many states");
    for (StateId s : starts_)
      if (s >= state_count_) throw Error("start state out of range");
    for (StateId s : finals_)
      if (s >= state_count_) throw Error("final state out of range");
    const std::size_t k = alphabet_.size();
    for (const auto& t : transitions_) {
      if (t.from >= state_count_ || t.to >= state_count_) throw Error("transition state out of range");
      if (t.symbol >= k) throw Error("transition symbol out of range");
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

    offsets_.assign(state_count_ * k + 1, 0);
    for (const auto& t : transitions_) ++offsets_[t.from * k + t.symbol + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    targets_.reserve(transitions_.size());
    for (const auto& t : transitions_) targets_.push_back(t.to);

    const std::size_t tagged = detail::tag_count<SubsetTag>(tags_) + detail::tag_count<ProductTag>(tags_) +
                               detail::tag_count<OriginTag>(tags_);
    if (!std::holds_alternative<std::monostate>(tags_) && tagged != state_count_)
      throw Error("state tag count does not match state count");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  const StateSet& starts() const noexcept { return starts_; }
  const StateSet& finals() const noexcept { return finals_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const StateTags& tags() const noexcept { return tags_; }

  bool is_start(StateId s) const { return detail::contains(starts_, s); }
  bool is_final(StateId s) const { return detail::contains(finals_, s); }

  std::span<const StateId> successors(StateId s, Symbol a) const {
    const std::size_t i = static_cast<std::size_t>(s) * alphabet_.size() + a;
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  /// First successor on `a`, or kNoState. Meaningful for semi-deterministic automata.
  StateId next(StateId s, Symbol a) const {
    auto succ = successors(s, a);
    return succ.empty() ? kNoState : succ.front();
  }

  bool semi_deterministic() const {
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      if (offsets_[i + 1] - offsets_[i] > 1) return false;
    return true;
  }

  bool deterministic() const { return starts_.size() == 1 && semi_deterministic(); }

  /// Every state has at least one transition on every symbol.
  bool complete() const {
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      if (offsets_[i + 1] == offsets_[i]) return false;
    return true;
  }

  const std::vector<SubsetTag>& subset_tags() const {
    if (auto* v = std::get_if<std::vector<SubsetTag>>(&tags_)) return *v;
    throw Error("automaton carries no subset tags");
  }
  const std::vector<ProductTag>& product_tags() const {
    if (auto* v = std::get_if<std::vector<ProductTag>>(&tags_)) return *v;
    throw Error("automaton carries no product tags");
  }
  const std::vector<OriginTag>& origin_tags() const {
    if (auto* v = std::get_if<std::vector<OriginTag>>(&tags_)) return *v;
    throw Error("automaton carries no origin tags");
  }

  FiniteAutomaton with_starts(StateSet starts) const {
    return {alphabet_, state_count_, std::move(starts), finals_, transitions_, tags_};
  }
  FiniteAutomaton with_finals(StateSet finals) const {
    return {alphabet_, state_count_, starts_, std::move(finals), transitions_, tags_};
  }

  /// Structural identity, ignoring tags.
  friend bool operator==(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    return a.state_count_ == b.state_count_ && a.starts_ == b.starts_ && a.finals_ == b.finals_ &&
           a.transitions_ == b.transitions_ && a.alphabet_ == b.alphabet_;
  }

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  StateSet starts_;
  StateSet finals_;
  std::vector<Transition> transitions_;
  StateTags tags_;
  std::vector<std::size_t> offsets_;
  std::vector<StateId> targets_;
};

inline StateSet all_states(std::size_t n) {
  StateSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<StateId>(i);
  return s;
}

/// Set of states reachable from `from` by reading `a`.
inline StateSet step(const FiniteAutomaton& fa, const StateSet& from, Symbol a) {
  StateSet out;
  for (StateId s : from) {
    auto succ = fa.successors(s, a);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  return detail::normalized(std::move(out));
}

inline bool accepts(const FiniteAutomaton& fa, std::span<const Symbol> word) {
  StateSet current = fa.starts();
  for (Symbol a : word) {
    if (a >= fa.alphabet().size()) throw Error("symbol index out of range");
    current = step(fa, current, a);
    if (current.empty()) return false;
  }
  for (StateId s : current)
    if (fa.is_final(s)) return true;
  return false;
}

inline bool accepts(const FiniteAutomaton& fa, std::string_view text) {
  return accepts(fa, fa.alphabet().encode(text));
}

/// States reachable from any start state.
inline std::vector<bool> reachable(const FiniteAutomaton& fa) {
  std::vector<bool> seen(fa.state_count(), false);
  std::vector<StateId> todo(fa.starts().begin(), fa.starts().end());
  for (StateId s : todo) seen[s] = true;
  while (!todo.empty()) {
    StateId s = todo.back();
    todo.pop_back();
    for (Symbol a = 0; a < fa.alphabet().size(); ++a)
      for (StateId t : fa.successors(s, a))
        if (!seen[t]) {
          seen[t] = true;
          todo.push_back(t);
        }
  }
  return seen;
}

inline bool is_empty(const FiniteAutomaton& fa) {
  auto seen = reachable(fa);
  for (StateId f : fa.finals())
    if (seen[f]) return false;
  return true;
}

}  // namespace apd
