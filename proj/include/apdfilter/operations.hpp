#pragma once

#include <deque>
#include <map>
#include <unordered_map>

#include "automaton.hpp"

namespace apd {

/// One-state automaton accepting every string over `alphabet`.
inline FiniteAutomaton sigma_star(const Alphabet& alphabet) {
  std::vector<Transition> t;
  for (Symbol a = 0; a < alphabet.size(); ++a) t.push_back({0, a, 0});
  return {alphabet, 1, {0}, {0}, std::move(t)};
}

/// One-state automaton accepting nothing.
inline FiniteAutomaton empty_language(const Alphabet& alphabet) { return {alphabet, 1, {0}, {}, {}}; }

/// Subset construction. Only subsets reachable from the start subset are
/// materialized (the empty subset never is); states are numbered in BFS order
/// with symbols visited in alphabet order, and each carries its SubsetTag.
inline FiniteAutomaton determinize(const FiniteAutomaton& fa) {
  if (fa.starts().empty()) throw Error("no start states");
  const std::size_t k = fa.alphabet().size();
  std::map<StateSet, StateId> index;
  std::vector<SubsetTag> tags;
  std::vector<Transition> transitions;
  std::deque<StateId> queue;

  auto intern = [&](StateSet set) {
    auto [it, inserted] = index.emplace(set, static_cast<StateId>(tags.size()));
    if (inserted) {
      tags.push_back({std::move(set)});
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern(fa.starts());
  while (!queue.empty()) {
    const StateId id = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < k; ++a) {
      StateSet next = step(fa, tags[id].states, a);
      if (next.empty()) continue;
      const StateId to = intern(std::move(next));
      transitions.push_back({id, a, to});
    }
  }

  StateSet finals;
  for (std::size_t i = 0; i < tags.size(); ++i)
    for (StateId s : tags[i].states)
      if (fa.is_final(s)) {
        finals.push_back(static_cast<StateId>(i));
        break;
      }
  const std::size_t n = tags.size();
  return {fa.alphabet(), n, {0}, std::move(finals), std::move(transitions), std::move(tags)};
}

/// Product construction over reachable pairs. Both inputs must share an alphabet.
inline FiniteAutomaton intersect(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error("alphabet mismatch in intersection");
  const std::size_t k = a.alphabet().size();
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<ProductTag> tags;
  std::vector<Transition> transitions;
  std::deque<StateId> queue;

  auto intern = [&](StateId l, StateId r) {
    const std::uint64_t key = (static_cast<std::uint64_t>(l) << 32) | r;
    auto [it, inserted] = index.emplace(key, static_cast<StateId>(tags.size()));
    if (inserted) {
      tags.push_back({l, r});
      queue.push_back(it->second);
    }
    return it->second;
  };

  StateSet starts;
  for (StateId l : a.starts())
    for (StateId r : b.starts()) starts.push_back(intern(l, r));
  while (!queue.empty()) {
    const StateId id = queue.front();
    queue.pop_front();
    const ProductTag pair = tags[id];
    for (Symbol x = 0; x < k; ++x)
      for (StateId l : a.successors(pair.left, x))
        for (StateId r : b.successors(pair.right, x)) transitions.push_back({id, x, intern(l, r)});
  }
  StateSet finals;
  for (std::size_t i = 0; i < tags.size(); ++i)
    if (a.is_final(tags[i].left) && b.is_final(tags[i].right)) finals.push_back(static_cast<StateId>(i));
  const std::size_t n = tags.size();
  return {a.alphabet(), n, std::move(starts), std::move(finals), std::move(transitions), std::move(tags)};
}

/// Side-by-side union. State ids are offset per input; OriginTags record the source.
inline FiniteAutomaton disjoint_union(std::span<const FiniteAutomaton> parts) {
  if (parts.empty()) throw Error("disjoint union of an empty list");
  const Alphabet& alphabet = parts.front().alphabet();
  std::vector<OriginTag> tags;
  StateSet starts, finals;
  std::vector<Transition> transitions;
  StateId offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (!(p.alphabet() == alphabet)) throw Error("alphabet mismatch in disjoint union");
    for (StateId s = 0; s < p.state_count(); ++s) tags.push_back({i, s});
    for (StateId s : p.starts()) starts.push_back(s + offset);
    for (StateId s : p.finals()) finals.push_back(s + offset);
    for (const auto& t : p.transitions()) transitions.push_back({t.from + offset, t.symbol, t.to + offset});
    offset += static_cast<StateId>(p.state_count());
  }
  return {alphabet, offset, std::move(starts), std::move(finals), std::move(transitions), std::move(tags)};
}

inline FiniteAutomaton disjoint_union(std::initializer_list<FiniteAutomaton> parts) {
  return disjoint_union(std::span<const FiniteAutomaton>(parts.begin(), parts.size()));
}

/// Relabels every transition with the single symbol "0"; parallel edges merge.
inline FiniteAutomaton zero_relabel(const FiniteAutomaton& fa) {
  std::vector<Transition> t;
  t.reserve(fa.transitions().size());
  for (const auto& x : fa.transitions()) t.push_back({x.from, 0, x.to});
  return {Alphabet({"0"}), fa.state_count(), fa.starts(), fa.finals(), std::move(t), fa.tags()};
}

namespace detail {

/// Determinization that maps a start-less automaton to the empty language.
inline FiniteAutomaton determinize_any(const FiniteAutomaton& fa) {
  if (fa.starts().empty()) return empty_language(fa.alphabet());
  return determinize(fa);
}

/// Adds a non-final sink so every (state, symbol) has a transition. Input must
/// be deterministic.
inline FiniteAutomaton completed(const FiniteAutomaton& dfa) {
  if (dfa.complete()) return dfa;
  const std::size_t k = dfa.alphabet().size();
  const auto sink = static_cast<StateId>(dfa.state_count());
  std::vector<Transition> t = dfa.transitions();
  for (StateId s = 0; s < dfa.state_count(); ++s)
    for (Symbol a = 0; a < k; ++a)
      if (dfa.successors(s, a).empty()) t.push_back({s, a, sink});
  for (Symbol a = 0; a < k; ++a) t.push_back({sink, a, sink});
  return {dfa.alphabet(), dfa.state_count() + 1, dfa.starts(), dfa.finals(), std::move(t)};
}

}  // namespace detail

/// Complement relative to the automaton's own alphabet.
inline FiniteAutomaton complement(const FiniteAutomaton& fa) {
  auto dfa = detail::completed(detail::determinize_any(fa));
  StateSet finals;
  for (StateId s = 0; s < dfa.state_count(); ++s)
    if (!dfa.is_final(s)) finals.push_back(s);
  return {dfa.alphabet(), dfa.state_count(), dfa.starts(), std::move(finals), dfa.transitions()};
}

inline FiniteAutomaton difference(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error("alphabet mismatch in difference");
  return intersect(a, complement(b));
}

/// Accepts { w·a : w accepted by fa }.
inline FiniteAutomaton concat_letter(const FiniteAutomaton& fa, Symbol a) {
  if (a >= fa.alphabet().size()) throw Error("unknown symbol in concat_letter");
  const auto z = static_cast<StateId>(fa.state_count());
  std::vector<Transition> t = fa.transitions();
  for (StateId f : fa.finals()) t.push_back({f, a, z});
  return {fa.alphabet(), fa.state_count() + 1, fa.starts(), {z}, std::move(t)};
}

/// Accepts { w : w·a accepted by fa }; finals become the states with an
/// a-transition into an old final state.
inline FiniteAutomaton unconcat_last(const FiniteAutomaton& fa, Symbol a) {
  if (a >= fa.alphabet().size()) throw Error("unknown symbol in unconcat_last");
  StateSet finals;
  for (const auto& t : fa.transitions())
    if (t.symbol == a && fa.is_final(t.to)) finals.push_back(t.from);
  return fa.with_finals(std::move(finals));
}

/// Accepts Σ*·Lang(fa). A fresh hub state loops on every symbol and copies the
/// transitions leaving fa's start states; it is final when some start is.
inline FiniteAutomaton sigma_star_prefix(const FiniteAutomaton& fa) {
  const std::size_t k = fa.alphabet().size();
  const auto hub = static_cast<StateId>(fa.state_count());
  std::vector<Transition> t = fa.transitions();
  for (Symbol a = 0; a < k; ++a) t.push_back({hub, a, hub});
  bool accepts_empty = false;
  for (StateId s : fa.starts()) {
    accepts_empty = accepts_empty || fa.is_final(s);
    for (Symbol a = 0; a < k; ++a)
      for (StateId to : fa.successors(s, a)) t.push_back({hub, a, to});
  }
  StateSet starts = fa.starts();
  starts.push_back(hub);
  StateSet finals = fa.finals();
  if (accepts_empty) finals.push_back(hub);
  return {fa.alphabet(), fa.state_count() + 1, std::move(starts), std::move(finals), std::move(t)};
}

/// Canonical minimal complete DFA. States are numbered in BFS order from the
/// start with symbols in alphabet order, so two automata accept the same
/// language iff their minimized forms compare equal.
inline FiniteAutomaton minimize(const FiniteAutomaton& fa) {
  const auto dfa = detail::completed(detail::determinize_any(fa));
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.alphabet().size();

  // Moore refinement: split classes by (class, successor classes) signatures.
  std::vector<std::size_t> cls(n);
  for (StateId s = 0; s < n; ++s) cls[s] = dfa.is_final(s) ? 1 : 0;
  std::size_t class_count = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature_ids;
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{cls[s]};
      for (Symbol a = 0; a < k; ++a) sig.push_back(cls[dfa.next(s, a)]);
      next[s] = signature_ids.emplace(std::move(sig), signature_ids.size()).first->second;
    }
    const std::size_t count = signature_ids.size();
    cls = std::move(next);
    if (count == class_count) break;
    class_count = count;
  }

  // Canonical BFS numbering of the quotient.
  std::vector<StateId> number(class_count, kNoState);
  std::vector<StateId> representative;
  std::deque<StateId> queue;
  const StateId start = dfa.starts().front();
  number[cls[start]] = 0;
  representative.push_back(start);
  queue.push_back(start);
  std::vector<Transition> t;
  StateSet finals;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    const StateId id = number[cls[s]];
    if (dfa.is_final(s)) finals.push_back(id);
    for (Symbol a = 0; a < k; ++a) {
      const StateId to = dfa.next(s, a);
      if (number[cls[to]] == kNoState) {
        number[cls[to]] = static_cast<StateId>(representative.size());
        representative.push_back(to);
        queue.push_back(to);
      }
      t.push_back({id, a, number[cls[to]]});
    }
  }
  return {dfa.alphabet(), representative.size(), {0}, std::move(finals), std::move(t)};
}

/// Language equality via canonical forms.
inline bool equivalent(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) return false;
  return minimize(a) == minimize(b);
}

/// Accepts everything any of the inputs accepts.
inline FiniteAutomaton union_of(std::span<const FiniteAutomaton> parts) {
  auto u = disjoint_union(parts);
  return {u.alphabet(), u.state_count(), u.starts(), u.finals(), u.transitions()};
}

}  // namespace apd
