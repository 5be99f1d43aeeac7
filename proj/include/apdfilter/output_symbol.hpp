#pragma once

#include <cstddef>
#include <variant>

#include "automaton.hpp"

namespace apd {

/// Segment recognized by domain `index` (1-based).
struct DomainLabel {
  std::size_t index;
  friend bool operator==(const DomainLabel&, const DomainLabel&) = default;
};

/// Resynchronization from transducer state `from` to `to`. `reverse` marks
/// breaks found by the right-to-left pass of a bidirectional filter.
struct Break {
  StateId from;
  StateId to;
  bool reverse = false;
  friend bool operator==(const Break&, const Break&) = default;
};

/// Classification ambiguous or undetermined.
struct Lambda {
  friend bool operator==(const Lambda&, const Lambda&) = default;
};

using OutputSymbol = std::variant<DomainLabel, Break, Lambda>;

inline bool is_break(const OutputSymbol& o) { return std::holds_alternative<Break>(o); }
inline bool is_lambda(const OutputSymbol& o) { return std::holds_alternative<Lambda>(o); }
inline bool is_domain(const OutputSymbol& o) { return std::holds_alternative<DomainLabel>(o); }

}  // namespace apd
