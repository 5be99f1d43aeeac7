#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "error.hpp"
#include "output_symbol.hpp"
#include "transducer.hpp"

namespace apd {

/// Gray level per output symbol: domain bands from 255 down to 95, breaks
/// black, λ mid-gray.
struct RenderPalette {
  std::size_t domain_count = 1;

  int gray(const OutputSymbol& o) const {
    if (auto* d = std::get_if<DomainLabel>(&o)) {
      const std::size_t span = domain_count > 1 ? domain_count - 1 : 1;
      return 255 - static_cast<int>((d->index - 1) * 160 / span);
    }
    if (is_break(o)) return 0;
    return 128;
  }
};

using GrayGrid = std::vector<std::vector<int>>;

inline GrayGrid to_gray(const std::vector<std::vector<OutputSymbol>>& labels, const RenderPalette& palette) {
  GrayGrid g;
  for (const auto& row : labels) {
    std::vector<int> r;
    r.reserve(row.size());
    for (const auto& o : row) r.push_back(palette.gray(o));
    g.push_back(std::move(r));
  }
  return g;
}

/// Raw diagram: symbol 0 white, the highest symbol black.
inline GrayGrid to_gray(const std::vector<Word>& rows, std::size_t k) {
  GrayGrid g;
  for (const auto& row : rows) {
    std::vector<int> r;
    for (Symbol x : row) r.push_back(255 - static_cast<int>(x * 255 / (k > 1 ? k - 1 : 1)));
    g.push_back(std::move(r));
  }
  return g;
}

/// Plain (P2) PGM with maxval 255, one image row per line.
inline std::string emit_pgm(const GrayGrid& grid) {
  if (grid.empty() || grid.front().empty()) throw Error("cannot render an empty grid");
  const std::size_t w = grid.front().size();
  std::ostringstream out;
  out << "P2\n" << w << ' ' << grid.size() << "\n255\n";
  for (const auto& row : grid) {
    if (row.size() != w) throw Error("ragged grid");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << '\n';
  }
  return out.str();
}

inline GrayGrid parse_pgm(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  std::size_t w = 0, h = 0;
  int maxval = 0;
  if (!(in >> magic >> w >> h >> maxval) || magic != "P2") throw Error("not a plain PGM image");
  GrayGrid g(h, std::vector<int>(w));
  for (auto& row : g)
    for (auto& v : row)
      if (!(in >> v) || v < 0 || v > maxval) throw Error("truncated or invalid PGM data");
  return g;
}

/// Integer codes for machine consumers: domain index, 0 for λ, negative break
/// ids. Ids of known filters come first (forward then backward pass); other
/// breaks are numbered in first-use order.
class SymbolCoder {
 public:
  SymbolCoder() = default;
  explicit SymbolCoder(const Transducer& forward, const Transducer* backward = nullptr) {
    for (const auto& p : forward.break_pairs()) ids_.emplace(Key{p.first, p.second, false}, next_++);
    if (backward)
      for (const auto& p : backward->break_pairs()) ids_.emplace(Key{p.first, p.second, true}, next_++);
  }

  std::int64_t code(const OutputSymbol& o) {
    if (auto* d = std::get_if<DomainLabel>(&o)) return static_cast<std::int64_t>(d->index);
    if (auto* b = std::get_if<Break>(&o)) {
      auto [it, inserted] = ids_.emplace(Key{b->from, b->to, b->reverse}, next_);
      if (inserted) ++next_;
      return -it->second;
    }
    return 0;
  }

 private:
  using Key = std::tuple<StateId, StateId, bool>;
  std::map<Key, std::int64_t> ids_;
  std::int64_t next_ = 1;
};

inline std::string emit_csv(const std::vector<std::vector<OutputSymbol>>& rows, SymbolCoder& coder) {
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << coder.code(row[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace apd
