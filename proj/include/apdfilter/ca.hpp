#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "alphabet.hpp"
#include "error.hpp"
#include "output_symbol.hpp"
#include "stack_filter.hpp"
#include "transducer.hpp"

namespace apd::ca {

using BigInt = boost::multiprecision::cpp_int;

/// Local update rule of a one-dimensional CA with k symbols and radius r.
/// table[η] is the image of neighborhood η, where η is read as a base-k
/// number with the leftmost cell most significant.
struct Rule {
  std::size_t k;
  std::size_t r;
  std::vector<Symbol> table;
  BigInt number;

  std::size_t width() const noexcept { return 2 * r + 1; }
};

inline std::size_t neighborhood_count(std::size_t k, std::size_t r) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < 2 * r + 1; ++i) n *= k;
  return n;
}

/// Wolfram numbering: the image of neighborhood η is the base-k digit of
/// `number` at position η, so the highest neighborhood is the most significant digit.
inline Rule rule_from_number(std::size_t k, std::size_t r, const BigInt& number) {
  if (k < 2) throw Error("rule needs k >= 2");
  if (r < 1) throw Error("rule needs r >= 1");
  const std::size_t count = neighborhood_count(k, r);
  if (number < 0 || number >= boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(count)))
    throw Error("rule number out of range");
  Rule rule{k, r, std::vector<Symbol>(count), number};
  BigInt rest = number;
  for (std::size_t i = 0; i < count; ++i) {
    rule.table[i] = static_cast<Symbol>(rest % k);
    rest /= k;
  }
  return rule;
}

inline BigInt number_from_table(std::size_t k, std::span<const Symbol> table) {
  BigInt n = 0;
  for (auto it = table.rbegin(); it != table.rend(); ++it) {
    if (*it >= k) throw Error("rule table entry out of range");
    n = n * k + *it;
  }
  return n;
}

/// Rows of a run with periodic boundaries; rows[0] is the initial configuration.
struct SpaceTimeDiagram {
  std::size_t k;
  std::vector<Word> rows;

  std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
  std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
};

inline Word apply(const Rule& rule, std::span<const Symbol> row) {
  const std::size_t n = row.size();
  const std::size_t w = rule.width();
  Word next(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t code = 0;
    for (std::size_t d = 0; d < w; ++d) {
      const std::size_t pos = (i + n * w - rule.r + d) % n;
      code = code * rule.k + row[pos];
    }
    next[i] = rule.table[code];
  }
  return next;
}

inline SpaceTimeDiagram evolve(const Rule& rule, Word initial, std::size_t steps) {
  if (initial.empty()) throw Error("initial configuration is empty");
  for (Symbol x : initial)
    if (x >= rule.k) throw Error("initial configuration symbol out of range");
  SpaceTimeDiagram d{rule.k, {std::move(initial)}};
  d.rows.reserve(steps + 1);
  for (std::size_t t = 0; t < steps; ++t) d.rows.push_back(ca::apply(rule, d.rows.back()));
  return d;
}

/// splitmix64; fixed so `random:<seed>` rows are reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline Word random_row(std::size_t k, std::size_t width, std::uint64_t seed) {
  SplitMix64 gen(seed);
  Word w(width);
  for (auto& x : w) x = static_cast<Symbol>(gen() % k);
  return w;
}

/// Initial condition from `random:<seed>`, `word:<w>^<reps>` or `@file`.
/// `width` is used only by the random form.
inline Word parse_initial(std::string_view spec, const Alphabet& alphabet, std::size_t width) {
  if (spec.rfind("random:", 0) == 0) {
    if (width == 0) throw Error("random initial condition needs a width");
    const std::string seed(spec.substr(7));
    try {
      return random_row(alphabet.size(), width, std::stoull(seed));
    } catch (const std::logic_error&) {
      throw Error("bad random seed '" + seed + "'");
    }
  }
  if (spec.rfind("word:", 0) == 0) {
    std::string body(spec.substr(5));
    std::size_t reps = 1;
    if (auto caret = body.rfind('^'); caret != std::string::npos) {
      try {
        reps = std::stoull(body.substr(caret + 1));
      } catch (const std::logic_error&) {
        throw Error("bad repetition count in '" + std::string(spec) + "'");
      }
      body.resize(caret);
    }
    const Word unit = alphabet.encode(body);
    Word w;
    for (std::size_t i = 0; i < reps; ++i) w.insert(w.end(), unit.begin(), unit.end());
    if (w.empty()) throw Error("word initial condition is empty");
    return w;
  }
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in{std::string(spec.substr(1))};
    if (!in) throw Error("cannot read '" + std::string(spec.substr(1)) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return alphabet.encode(buf.str());
  }
  throw Error("unknown initial condition '" + std::string(spec) + "'");
}

/// One row of symbols per line.
inline std::string format_diagram(const SpaceTimeDiagram& d, const Alphabet& alphabet) {
  std::string out;
  for (const auto& row : d.rows) {
    out += alphabet.decode(row);
    out += '\n';
  }
  return out;
}

inline SpaceTimeDiagram parse_diagram(std::string_view text, const Alphabet& alphabet) {
  SpaceTimeDiagram d{alphabet.size(), {}};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Word row;
    try {
      row = alphabet.encode(line);
    } catch (const Error& e) {
      throw ParseError(number, e.what());
    }
    if (!d.rows.empty() && row.size() != d.rows.front().size()) throw ParseError(number, "row width differs");
    d.rows.push_back(std::move(row));
  }
  if (d.rows.empty()) throw Error("diagram has no rows");
  return d;
}

using LabeledDiagram = std::vector<std::vector<OutputSymbol>>;

/// Each row filtered independently by the transducer in circular mode.
inline LabeledDiagram filter_with_transducer(const Transducer& t, const SpaceTimeDiagram& d) {
  LabeledDiagram out;
  out.reserve(d.rows.size());
  for (const auto& row : d.rows) out.push_back(t.transduce(row, Scan::circular));
  return out;
}

inline LabeledDiagram filter_bidirectional(const BidirectionalFilter& f, const SpaceTimeDiagram& d) {
  LabeledDiagram out;
  out.reserve(d.rows.size());
  for (const auto& row : d.rows) out.push_back(f.run(row, Scan::circular));
  return out;
}

/// Cells covered by exactly one maximal substring (counting every shift of a
/// periodic representative) take that substring's domain label, or λ when
/// several domains accept it. Overlapped or uncovered cells are breaks.
inline std::vector<OutputSymbol> render_periodic_cover(const MaximalCover& cover, std::size_t width) {
  if (cover.whole_string) {
    const auto& doms = cover.intervals.front().domains;
    OutputSymbol label = doms.size() == 1 ? OutputSymbol{DomainLabel{doms.front()}} : OutputSymbol{Lambda{}};
    return std::vector<OutputSymbol>(width, label);
  }
  std::vector<std::size_t> hits(width, 0);
  std::vector<const Interval*> owner(width, nullptr);
  for (const auto& iv : cover.intervals)
    for (std::size_t x = iv.start; x <= iv.end; ++x) {
      const std::size_t p = (x - 1) % width;
      ++hits[p];
      owner[p] = &iv;
    }
  std::vector<OutputSymbol> out(width, Break{0, 0});
  for (std::size_t p = 0; p < width; ++p)
    if (hits[p] == 1)
      out[p] = owner[p]->domains.size() == 1 ? OutputSymbol{DomainLabel{owner[p]->domains.front()}}
                                             : OutputSymbol{Lambda{}};
  return out;
}

/// Each row treated as one period of a bi-infinite string.
inline LabeledDiagram filter_with_stack(const StackFilter& f, const SpaceTimeDiagram& d) {
  LabeledDiagram out;
  out.reserve(d.rows.size());
  for (const auto& row : d.rows) out.push_back(render_periodic_cover(f.filter_periodic(row), row.size()));
  return out;
}

}  // namespace apd::ca
