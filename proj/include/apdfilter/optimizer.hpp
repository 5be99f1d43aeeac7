#pragma once

#include <functional>
#include <iostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "domain.hpp"
#include "operations.hpp"
#include "transducer.hpp"

namespace apd {

/// For each state of D_1 ⊔ ... ⊔ D_n, a partition of Σ* into regular classes
/// of past input. Classes are stored as canonical minimal DFAs.
struct GammaMap {
  std::vector<std::vector<FiniteAutomaton>> classes;

  std::size_t total_classes() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.size();
    return n;
  }
};

/// Domain whose states are (original state, class) pairs.
struct SplitDomain {
  Domain domain;
  std::size_t original_index;               ///< 0-based index of the source domain
  std::vector<StateId> original_state;      ///< per split state
  std::vector<std::size_t> class_index;     ///< per split state, ordinal within Γ(original state)
};

struct OptimizeOptions {
  std::size_t max_passes = 64;
  std::function<void(std::string_view)> warn = [](std::string_view msg) { std::clog << "warning: " << msg << '\n'; };
};

struct OptimizeResult {
  std::vector<SplitDomain> domains;
  std::vector<GammaMap> stages;  ///< initial map followed by one entry per refine pass
  std::size_t passes = 0;

  std::vector<Domain> plain_domains() const {
    std::vector<Domain> out;
    for (const auto& d : domains) out.push_back(d.domain);
    return out;
  }
};

class OptimizeError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool same_language_set(const std::vector<FiniteAutomaton>& a, const std::vector<FiniteAutomaton>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

/// Determinized past automaton for the forbidden pair (s, a) intersected with `dfa`.
inline FiniteAutomaton resync_product(const FiniteAutomaton& past_source, const FiniteAutomaton& dfa, StateId s,
                                      Symbol a) {
  return intersect(determinize(forbidden_extension(past_source, s, a)), dfa);
}

inline FiniteAutomaton past_for_target(const FiniteAutomaton& product, StateId target, Symbol a) {
  StateSet finals;
  const auto& pairs = product.product_tags();
  for (StateId x : product.finals())
    if (pairs[x].right == target) finals.push_back(x);
  return unconcat_last(product.with_finals(std::move(finals)), a);
}

}  // namespace detail

/// Pasts w that can end at state s of `past_source` and for which w·a drives
/// `dfa` from its start to `target`. `a` must be forbidden at s.
inline FiniteAutomaton build_resync_past(const FiniteAutomaton& past_source, const FiniteAutomaton& dfa, StateId s,
                                         Symbol a, StateId target) {
  if (s >= past_source.state_count() || target >= dfa.state_count()) throw Error("state id out of range");
  if (!past_source.successors(s, a).empty()) throw Error("transition is not forbidden");
  return detail::past_for_target(detail::resync_product(past_source, dfa, s, a), target, a);
}

/// Coarsest partition of the union of the inputs' languages such that every
/// input is a union of parts. Empty parts are dropped; parts are canonical
/// minimal DFAs without duplicates.
inline std::vector<FiniteAutomaton> disjoin(std::span<const FiniteAutomaton> inputs) {
  std::vector<FiniteAutomaton> parts;
  for (auto it = inputs.rbegin(); it != inputs.rend(); ++it) {
    const auto head = minimize(*it);
    std::vector<FiniteAutomaton> next;
    auto add = [&](const FiniteAutomaton& x) {
      auto m = minimize(x);
      if (is_empty(m) || std::find(next.begin(), next.end(), m) != next.end()) return;
      next.push_back(std::move(m));
    };
    if (parts.empty()) {
      add(head);
    } else {
      add(difference(head, union_of(parts)));
      for (const auto& p : parts) add(intersect(head, p));
      for (const auto& p : parts) add(difference(p, head));
    }
    parts = std::move(next);
  }
  return parts;
}

inline std::vector<FiniteAutomaton> disjoin(std::initializer_list<FiniteAutomaton> inputs) {
  return disjoin(std::span<const FiniteAutomaton>(inputs.begin(), inputs.size()));
}

/// Classes pairwise disjoint and jointly equal to Σ*.
inline bool partitions_sigma_star(const std::vector<FiniteAutomaton>& classes) {
  if (classes.empty()) return false;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (!is_empty(intersect(classes[i], classes[j]))) return false;
  return equivalent(union_of(classes), sigma_star(classes.front().alphabet()));
}

/// Γ(s) for every state of ⊔D: the partition of pasts by the state a
/// resynchronization after each forbidden letter at s would land in.
inline GammaMap gamma_initial(const std::vector<Domain>& domains, const OptimizeOptions& options = {}) {
  const auto u = domain_union(domains);
  const auto dfa = determinize(u);
  const Alphabet& alphabet = u.alphabet();
  GammaMap gamma;
  for (StateId s = 0; s < u.state_count(); ++s) {
    std::vector<FiniteAutomaton> pasts;
    for (Symbol a = 0; a < alphabet.size(); ++a) {
      if (!u.successors(s, a).empty()) continue;
      const auto product = detail::resync_product(u, dfa, s, a);
      for (StateId target = 0; target < dfa.state_count(); ++target) {
        auto b = detail::past_for_target(product, target, a);
        if (is_empty(b)) continue;
        pasts.push_back(minimize(sigma_star_prefix(b)));
      }
    }
    if (pasts.empty()) {
      gamma.classes.push_back({minimize(sigma_star(alphabet))});
      continue;
    }
    auto classes = disjoin(pasts);
    auto rest = minimize(complement(union_of(classes)));
    if (!is_empty(rest)) {
      options.warn("pasts of state " + std::to_string(s) + " do not cover every string; adding the remainder class");
      classes.push_back(std::move(rest));
    }
    gamma.classes.push_back(std::move(classes));
  }
  return gamma;
}

struct RefineResult {
  GammaMap gamma;
  std::vector<bool> changed;

  bool any_changed() const { return std::find(changed.begin(), changed.end(), true) != changed.end(); }
};

/// One refinement pass over the transition structure of `domains_union`:
/// each class E of s is cut by the classes E' of every successor s' into the
/// pieces E'' with E''·a = (E·a) ∩ E'.
inline RefineResult refine(const FiniteAutomaton& domains_union, const GammaMap& gamma) {
  const std::size_t n = domains_union.state_count();
  if (gamma.classes.size() != n) throw Error("gamma map does not match the domain states");
  RefineResult result;
  result.gamma.classes.resize(n);
  result.changed.assign(n, false);
  for (StateId s = 0; s < n; ++s) {
    std::vector<FiniteAutomaton> pieces;
    for (const auto& t : domains_union.transitions()) {
      if (t.from != s) continue;
      for (const auto& e : gamma.classes[s]) {
        const auto shifted = concat_letter(e, t.symbol);
        for (const auto& e2 : gamma.classes[t.to]) {
          auto piece = unconcat_last(intersect(shifted, e2), t.symbol);
          if (!is_empty(piece)) pieces.push_back(std::move(piece));
        }
      }
    }
    result.gamma.classes[s] = pieces.empty() ? gamma.classes[s] : disjoin(pieces);
    result.changed[s] = !detail::same_language_set(result.gamma.classes[s], gamma.classes[s]);
  }
  return result;
}

/// Splits each domain state by its classes of past input, refining until the
/// transition structure lifts to the classes. Languages are preserved.
inline OptimizeResult optimize(const std::vector<Domain>& domains, const OptimizeOptions& options = {}) {
  const auto u = domain_union(domains);
  OptimizeResult result;
  GammaMap gamma = gamma_initial(domains, options);
  result.stages.push_back(gamma);
  for (;;) {
    if (result.passes >= options.max_passes)
      throw OptimizeError("optimizer exceeded the iteration cap of " + std::to_string(options.max_passes) +
                          " passes");
    auto pass = refine(u, gamma);
    ++result.passes;
    result.stages.push_back(pass.gamma);
    gamma = std::move(pass.gamma);
    if (!pass.any_changed()) break;
  }

  StateId offset = 0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const auto& d = domains[i];
    const auto& fa = d.automaton();
    std::vector<StateId> first_id(fa.state_count());
    SplitDomain split{d, i, {}, {}};
    std::vector<std::string> names;
    for (StateId s = 0; s < fa.state_count(); ++s) {
      first_id[s] = static_cast<StateId>(split.original_state.size());
      for (std::size_t c = 0; c < gamma.classes[offset + s].size(); ++c) {
        split.original_state.push_back(s);
        split.class_index.push_back(c);
        names.push_back(d.state_names()[s] + "." + std::to_string(c));
      }
    }
    std::vector<Transition> t;
    for (const auto& x : fa.transitions()) {
      const auto& from_classes = gamma.classes[offset + x.from];
      const auto& to_classes = gamma.classes[offset + x.to];
      for (std::size_t c = 0; c < from_classes.size(); ++c) {
        const auto shifted = concat_letter(from_classes[c], x.symbol);
        std::size_t hits = 0, target = 0;
        for (std::size_t c2 = 0; c2 < to_classes.size(); ++c2)
          if (is_empty(difference(shifted, to_classes[c2]))) {
            ++hits;
            target = c2;
          }
        if (hits != 1) throw OptimizeError("refinement incomplete at state " + d.state_names()[x.from]);
        t.push_back({static_cast<StateId>(first_id[x.from] + c), x.symbol,
                     static_cast<StateId>(first_id[x.to] + target)});
      }
    }
    const std::size_t n = split.original_state.size();
    split.domain = Domain(d.name(), FiniteAutomaton(fa.alphabet(), n, all_states(n), all_states(n), std::move(t)),
                          std::move(names), DomainKind::split);
    result.domains.push_back(std::move(split));
    offset += static_cast<StateId>(fa.state_count());
  }
  return result;
}

}  // namespace apd
