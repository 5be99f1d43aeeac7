#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "domain.hpp"
#include "operations.hpp"

namespace apd {

/// Substring σ_{start..end}, 1-based and inclusive. `domains` lists the
/// 1-based indices of every domain accepting it.
struct Interval {
  std::size_t start;
  std::size_t end;
  std::vector<std::size_t> domains;

  std::size_t length() const noexcept { return end + 1 - start; }
  bool contains(const Interval& o) const noexcept { return start <= o.start && o.end <= end; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.start == b.start && a.end == b.end; }
};

/// The ≺-maximal accepted substrings of a string.
struct MaximalCover {
  std::vector<Interval> intervals;
  /// Periodic input only: the whole bi-infinite string is one domain configuration.
  bool whole_string = false;
};

struct StackFilterStats {
  std::size_t pair_advances = 0;
  std::size_t max_depth = 0;
};

/// Exact maximal-substring cover using a stack of (state, start) pairs over
/// A = Det(D_1 ⊔ ... ⊔ D_n). Quadratic in the worst case.
class StackFilter {
 public:
  explicit StackFilter(std::vector<Domain> domains)
      : domains_(std::move(domains)), dfa_(determinize(domain_union(domains_))) {
    for (const auto& d : domains_)
      if (!(d.alphabet() == domains_.front().alphabet())) throw DomainError("domains do not share an alphabet");
  }

  const std::vector<Domain>& domains() const noexcept { return domains_; }
  const FiniteAutomaton& automaton() const noexcept { return dfa_; }

  /// Local filtering of a finite window (boundary wrap-around ignored).
  MaximalCover filter(std::span<const Symbol> sigma, StackFilterStats* stats = nullptr) const {
    struct Pair {
      StateId state;
      std::size_t start;
    };
    MaximalCover cover;
    const std::size_t n = sigma.size();
    const StateId s0 = dfa_.starts().front();
    const std::size_t k = dfa_.alphabet().size();
    std::vector<Pair> stack;  // stack.front() is the bottom
    auto emit = [&](std::size_t a, std::size_t b) {
      if (a > b) return;  // degenerate: a letter no domain accepts
      cover.intervals.push_back({a, b, accepting_domains(sigma, a, b)});
    };

    for (std::size_t j = 1; j <= n; ++j) {
      const Symbol x = sigma[j - 1];
      if (x >= k) throw Error("symbol index out of range");
      stack.push_back({s0, j});
      std::size_t kept = 0;
      for (std::size_t p = 0; p < stack.size(); ++p) {
        const StateId to = dfa_.next(stack[p].state, x);
        if (to != kNoState) {
          stack[kept++] = {to, stack[p].start};
          if (stats) ++stats->pair_advances;
        } else if (p == 0) {
          emit(stack[p].start, j - 1);
        }
      }
      stack.resize(kept);
      if (stats) stats->max_depth = std::max(stats->max_depth, stack.size());
    }
    if (!stack.empty()) emit(stack.front().start, n);
    return cover;
  }

  MaximalCover filter(std::string_view text, StackFilterStats* stats = nullptr) const {
    return filter(dfa_.alphabet().encode(text), stats);
  }

  /// Global filtering of the period-N bi-infinite string (period)^ℤ.
  ///
  /// Representatives are returned with start in 1..N; the full cover is their
  /// orbit under shifts by multiples of N. When the whole string is a domain
  /// configuration, `whole_string` is set and the single interval spans the
  /// length-(mN+1) probe window.
  MaximalCover filter_periodic(std::span<const Symbol> period, StackFilterStats* stats = nullptr) const {
    MaximalCover out;
    const std::size_t n = period.size();
    if (n == 0) return out;
    const std::size_t m = max_state_count(domains_);

    const auto probe = unroll(period, m * n + 1);
    auto local = filter(probe, stats);
    if (local.intervals.size() == 1 && local.intervals.front().start == 1 &&
        local.intervals.front().end == probe.size()) {
      local.whole_string = true;
      return local;
    }

    // Every finite maximal substring has length <= mN, so shifting it to start
    // in 2..N+1 keeps it strictly inside a window of length (m+1)N+2, where
    // the local and global answers agree.
    const auto window = unroll(period, (m + 1) * n + 2);
    auto wide = filter(window, stats);
    for (auto& iv : wide.intervals) {
      if (iv.start < 2 || iv.start > n + 1 || iv.end >= window.size()) continue;
      if (iv.start == n + 1) {
        iv.start -= n;
        iv.end -= n;
      }
      out.intervals.push_back(std::move(iv));
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    return out;
  }

 private:
  static Word unroll(std::span<const Symbol> period, std::size_t length) {
    Word w(length);
    for (std::size_t i = 0; i < length; ++i) w[i] = period[i % period.size()];
    return w;
  }

  std::vector<std::size_t> accepting_domains(std::span<const Symbol> sigma, std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    auto piece = sigma.subspan(a - 1, b + 1 - a);
    for (std::size_t i = 0; i < domains_.size(); ++i)
      if (accepts(domains_[i].automaton(), piece)) out.push_back(i + 1);
    return out;
  }

  std::vector<Domain> domains_;
  FiniteAutomaton dfa_;
};

inline MaximalCover filter_local(const std::vector<Domain>& domains, std::span<const Symbol> sigma,
                                 StackFilterStats* stats = nullptr) {
  return StackFilter(domains).filter(sigma, stats);
}

inline MaximalCover filter_global(const std::vector<Domain>& domains, std::span<const Symbol> period,
                                  StackFilterStats* stats = nullptr) {
  return StackFilter(domains).filter_periodic(period, stats);
}

}  // namespace apd
