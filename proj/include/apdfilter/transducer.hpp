#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domain.hpp"
#include "operations.hpp"
#include "output_symbol.hpp"

namespace apd {

/// Outcome of choosing where to jump after a forbidden letter.
struct ResyncReport {
  StateId state;             ///< state with no transition on `symbol`
  Symbol symbol;
  StateId target;            ///< chosen resynchronization state
  std::size_t specificity;   ///< subset size of `target`
  std::size_t past_length;   ///< length of the imagined past plus the forbidden letter
  /// Candidate states per imagined-past length, i.e. the union over all
  /// specificities. Entry l lists the states reachable by length-l strings.
  std::vector<StateSet> candidates_by_length;

  friend bool operator==(const ResyncReport&, const ResyncReport&) = default;
};

class ResyncError : public Error {
 public:
  ResyncError(const std::string& message, ResyncReport partial) : Error(message), report_(std::move(partial)) {}
  const ResyncReport& report() const noexcept { return report_; }

 private:
  ResyncReport report_;
};

/// Copy of `source` with a fresh state f, the transition s --a--> f, every
/// state a start state and f the only final state. It accepts the strings
/// that can reach s along some path, followed by a.
inline FiniteAutomaton forbidden_extension(const FiniteAutomaton& source, StateId s, Symbol a) {
  const auto f = static_cast<StateId>(source.state_count());
  std::vector<Transition> t = source.transitions();
  t.push_back({s, a, f});
  const std::size_t n = source.state_count() + 1;
  return {source.alphabet(), n, all_states(n), {f}, std::move(t)};
}

/// Picks the resynchronization state for the forbidden pair (s, a) of the
/// subset-tagged DFA `dfa`.
///
/// R = Det(ext) ∩ dfa collects the pasts that end at s, extended by a, which
/// the domains still accept. Determinizing R with all labels collapsed gives a
/// chain whose l-th state holds the R-states reachable in exactly l steps.
/// Candidates are the dfa-states those final R-states project to; the winner
/// is the first singleton in (specificity, length) dictionary order.
inline ResyncReport resync(const FiniteAutomaton& dfa, StateId s, Symbol a, std::size_t max_specificity) {
  if (dfa.next(s, a) != kNoState) throw Error("resync called on an allowed transition");
  const auto& subset = dfa.subset_tags();
  const auto past = intersect(determinize(forbidden_extension(dfa, s, a)), dfa);
  const auto chain = determinize(zero_relabel(past));
  const auto& layers = chain.subset_tags();
  const auto& pairs = past.product_tags();

  ResyncReport report{s, a, kNoState, 0, 0, {}};
  std::vector<bool> visited(chain.state_count(), false);
  for (StateId c = chain.starts().front(); c != kNoState && !visited[c]; c = chain.next(c, 0)) {
    visited[c] = true;
    StateSet projected;
    for (StateId x : layers[c].states)
      if (past.is_final(x)) projected.push_back(pairs[x].right);
    report.candidates_by_length.push_back(detail::normalized(std::move(projected)));
  }

  for (std::size_t i = 1; i <= max_specificity; ++i) {
    for (std::size_t l = 0; l < report.candidates_by_length.size(); ++l) {
      StateId hit = kNoState;
      std::size_t count = 0;
      for (StateId x : report.candidates_by_length[l])
        if (subset[x].states.size() == i) {
          hit = x;
          ++count;
        }
      if (count == 1) {
        report.target = hit;
        report.specificity = i;
        report.past_length = l;
        return report;
      }
    }
  }
  throw ResyncError("no unambiguous resynchronization state", std::move(report));
}

enum class Scan { linear, circular };

struct TransduceStats {
  std::size_t transitions = 0;
};

/// Finite transducer whose input projection is deterministic. Edges are
/// stored in a dense (state, symbol) table; built filters fill every entry.
class Transducer {
 public:
  struct Edge {
    StateId to;
    OutputSymbol out;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  Transducer(Alphabet alphabet, std::size_t state_count, StateId start, std::size_t domain_count,
             std::vector<std::optional<Edge>> table, std::vector<SubsetTag> tags = {},
             std::vector<ResyncReport> resyncs = {})
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        start_(start),
        domain_count_(domain_count),
        table_(std::move(table)),
        tags_(std::move(tags)),
        resyncs_(std::move(resyncs)) {
    if (table_.size() != state_count_ * alphabet_.size()) throw Error("transducer table has the wrong size");
    if (start_ >= state_count_) throw Error("transducer start state out of range");
    for (const auto& e : table_) {
      if (!e) continue;
      if (e->to >= state_count_) throw Error("transducer edge target out of range");
      if (auto* d = std::get_if<DomainLabel>(&e->out); d && (d->index < 1 || d->index > domain_count_))
        throw Error("domain label out of range");
      if (auto* b = std::get_if<Break>(&e->out); b && (b->from >= state_count_ || b->to >= state_count_))
        throw Error("break endpoint out of range");
    }
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  StateId start() const noexcept { return start_; }
  std::size_t domain_count() const noexcept { return domain_count_; }
  const std::vector<SubsetTag>& tags() const noexcept { return tags_; }
  const std::vector<ResyncReport>& resyncs() const noexcept { return resyncs_; }

  const std::optional<Edge>& edge(StateId s, Symbol a) const { return table_.at(s * alphabet_.size() + a); }

  bool complete() const {
    for (const auto& e : table_)
      if (!e) return false;
    return true;
  }

  /// In(T): the automaton read off the input labels. Every state is final.
  FiniteAutomaton input_automaton() const {
    std::vector<Transition> t;
    for (StateId s = 0; s < state_count_; ++s)
      for (Symbol a = 0; a < alphabet_.size(); ++a)
        if (const auto& e = edge(s, a)) t.push_back({s, a, e->to});
    return {alphabet_, state_count_, {start_}, all_states(state_count_), std::move(t)};
  }

  /// Distinct (from, to) break pairs in first-use order over (state, symbol).
  std::vector<std::pair<StateId, StateId>> break_pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    std::map<std::pair<StateId, StateId>, bool> seen;
    for (const auto& e : table_)
      if (e)
        if (auto* b = std::get_if<Break>(&e->out); b && seen.emplace(std::pair{b->from, b->to}, true).second)
          out.emplace_back(b->from, b->to);
    return out;
  }

  /// One output per input symbol. Circular mode reads the string twice and
  /// keeps the second lap, so wrap-around context is seen before recording.
  std::vector<OutputSymbol> transduce(std::span<const Symbol> sigma, Scan mode = Scan::linear,
                                      TransduceStats* stats = nullptr) const {
    const std::size_t k = alphabet_.size();
    std::vector<OutputSymbol> out;
    out.reserve(sigma.size());
    StateId state = start_;
    auto advance = [&](Symbol a) -> const Edge& {
      if (a >= k) throw Error("symbol index out of range");
      const auto& e = table_[state * k + a];
      if (!e) throw Error("transducer has no transition for symbol '" + alphabet_.token(a) + "'");
      if (stats) ++stats->transitions;
      state = e->to;
      return *e;
    };
    if (mode == Scan::circular) {
      if (sigma.empty()) throw Error("circular transduction needs a non-empty string");
      for (Symbol a : sigma) advance(a);
    }
    for (Symbol a : sigma) out.push_back(advance(a).out);
    return out;
  }

  std::vector<OutputSymbol> transduce(std::string_view text, Scan mode = Scan::linear) const {
    return transduce(alphabet_.encode(text), mode);
  }

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  StateId start_;
  std::size_t domain_count_;
  std::vector<std::optional<Edge>> table_;
  std::vector<SubsetTag> tags_;
  std::vector<ResyncReport> resyncs_;
};

namespace detail {

struct FilterSkeleton {
  FiniteAutomaton dfa;
  std::vector<std::optional<Transducer::Edge>> table;
  std::size_t union_states;
};

inline FilterSkeleton filter_skeleton(const std::vector<Domain>& domains) {
  for (const auto& d : domains)
    if (!(d.alphabet() == domains.front().alphabet())) throw DomainError("domains do not share an alphabet");
  const auto u = domain_union(domains);
  auto dfa = determinize(u);
  const auto& origin = u.origin_tags();
  const auto& tags = dfa.subset_tags();

  std::vector<OutputSymbol> label(dfa.state_count(), Lambda{});
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    const std::size_t first = origin[tags[s].states.front()].automaton;
    bool single = true;
    for (StateId x : tags[s].states) single = single && origin[x].automaton == first;
    if (single) label[s] = DomainLabel{first + 1};
  }
  const std::size_t k = dfa.alphabet().size();
  std::vector<std::optional<Transducer::Edge>> table(dfa.state_count() * k);
  for (const auto& t : dfa.transitions()) table[t.from * k + t.symbol] = Transducer::Edge{t.to, label[t.to]};
  return {std::move(dfa), std::move(table), u.state_count()};
}

}  // namespace detail

/// A = Det(⊔D_i) turned into a transducer: each transition outputs the label
/// of the domain its target lies in, or λ when the target spans several.
inline Transducer base_transducer(const std::vector<Domain>& domains) {
  auto sk = detail::filter_skeleton(domains);
  return {sk.dfa.alphabet(), sk.dfa.state_count(), sk.dfa.starts().front(), domains.size(), std::move(sk.table),
          sk.dfa.subset_tags()};
}

/// The base transducer with every forbidden transition filled in by a break
/// edge to its resynchronization state. In(T) is deterministic and complete.
inline Transducer build_filter(const std::vector<Domain>& domains) {
  auto sk = detail::filter_skeleton(domains);
  const std::size_t k = sk.dfa.alphabet().size();
  std::vector<ResyncReport> reports;
  for (StateId s = 0; s < sk.dfa.state_count(); ++s)
    for (Symbol a = 0; a < k; ++a) {
      if (sk.table[s * k + a]) continue;
      auto r = resync(sk.dfa, s, a, sk.union_states);
      sk.table[s * k + a] = Transducer::Edge{r.target, Break{s, r.target}};
      reports.push_back(std::move(r));
    }
  return {sk.dfa.alphabet(), sk.dfa.state_count(), sk.dfa.starts().front(), domains.size(), std::move(sk.table),
          sk.dfa.subset_tags(), std::move(reports)};
}

/// Pair of filters reading in opposite directions.
class BidirectionalFilter {
 public:
  BidirectionalFilter(Transducer forward, Transducer backward)
      : forward_(std::move(forward)), backward_(std::move(backward)) {
    if (!(forward_.alphabet() == backward_.alphabet())) throw Error("bidirectional filters disagree on alphabet");
  }

  /// Builds the forward filter from `domains` and the backward one from their reversals.
  explicit BidirectionalFilter(const std::vector<Domain>& domains)
      : BidirectionalFilter(build_filter(domains), build_filter(reversed_all(domains))) {}

  const Transducer& forward() const noexcept { return forward_; }
  const Transducer& backward() const noexcept { return backward_; }

  /// Per position: a break if either pass breaks there or the position lies
  /// between a right-to-left break and the next left-to-right break; the
  /// domain label both passes agree on; λ otherwise.
  std::vector<OutputSymbol> run(std::span<const Symbol> sigma, Scan mode = Scan::linear) const {
    const std::size_t n = sigma.size();
    const auto fwd = forward_.transduce(sigma, mode);
    Word mirrored(sigma.rbegin(), sigma.rend());
    auto bwd = backward_.transduce(mirrored, mode);
    std::reverse(bwd.begin(), bwd.end());
    for (auto& o : bwd)
      if (auto* b = std::get_if<Break>(&o)) b->reverse = true;

    std::vector<OutputSymbol> out(n, Lambda{});
    for (std::size_t p = 0; p < n; ++p) {
      if (is_break(fwd[p]))
        out[p] = fwd[p];
      else if (is_break(bwd[p]))
        out[p] = bwd[p];
      else if (is_domain(fwd[p]) && fwd[p] == bwd[p])
        out[p] = fwd[p];
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!is_break(bwd[p])) continue;
      const std::size_t limit = mode == Scan::circular ? n : n - p;
      for (std::size_t d = 1; d < limit; ++d) {
        const std::size_t q = (p + d) % n;
        if (is_break(fwd[q])) {
          for (std::size_t e = 1; e < d; ++e) out[(p + e) % n] = fwd[q];
          break;
        }
      }
    }
    return out;
  }

  std::vector<OutputSymbol> run(std::string_view text, Scan mode = Scan::linear) const {
    return run(forward_.alphabet().encode(text), mode);
  }

 private:
  static std::vector<Domain> reversed_all(const std::vector<Domain>& domains) {
    std::vector<Domain> out;
    for (const auto& d : domains) out.push_back(reversed(d));
    return out;
  }

  Transducer forward_;
  Transducer backward_;
};

inline std::vector<OutputSymbol> bidirectional(const std::vector<Domain>& domains, std::span<const Symbol> sigma,
                                               Scan mode = Scan::linear) {
  return BidirectionalFilter(domains).run(sigma, mode);
}

}  // namespace apd
