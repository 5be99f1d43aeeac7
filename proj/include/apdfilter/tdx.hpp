#pragma once

#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "domain_spec.hpp"
#include "transducer.hpp"

namespace apd {

/// FNV-1a, used to stamp filter files with the domain spec they came from.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// A filter as stored on disk, with the domain spec it was built from.
struct FilterFile {
  Transducer transducer;
  std::string source;      ///< domain spec text
  bool optimized = false;  ///< built from optimize(source domains)
  std::uint64_t source_hash = 0;
  bool hash_matches = true;
};

namespace detail {

inline std::string hex64(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << v;
  return o.str();
}

}  // namespace detail

/// Text form: header lines, then `trans s a OUT s'` with OUT one of d<i>,
/// brk<j>, lam, then the `break brk<j> s s'` table, then the source spec on
/// `source` lines.
inline std::string write_tdx(const Transducer& t, std::string_view source = {}, bool optimized = false) {
  std::string src(source);
  if (!src.empty() && src.back() != '\n') src += '\n';
  std::ostringstream out;
  const auto& alphabet = t.alphabet();
  out << "# apdfilter transducer\nalphabet";
  for (const auto& s : alphabet.symbols()) out << ' ' << s;
  out << "\ndomains " << t.domain_count() << "\nstates " << t.state_count() << "\nstart " << t.start()
      << "\noptimized " << (optimized ? 1 : 0) << "\nspec_hash " << detail::hex64(fnv1a(src)) << '\n';

  std::map<std::pair<StateId, StateId>, std::size_t> brk;
  const auto pairs = t.break_pairs();
  for (std::size_t j = 0; j < pairs.size(); ++j) brk.emplace(pairs[j], j + 1);

  for (StateId s = 0; s < t.state_count(); ++s)
    for (Symbol a = 0; a < alphabet.size(); ++a) {
      const auto& e = t.edge(s, a);
      if (!e) continue;
      out << "trans " << s << ' ' << alphabet.token(a) << ' ';
      if (auto* d = std::get_if<DomainLabel>(&e->out))
        out << 'd' << d->index;
      else if (auto* b = std::get_if<Break>(&e->out))
        out << "brk" << brk.at({b->from, b->to});
      else
        out << "lam";
      out << ' ' << e->to << '\n';
    }
  for (std::size_t j = 0; j < pairs.size(); ++j)
    out << "break brk" << j + 1 << ' ' << pairs[j].first << ' ' << pairs[j].second << '\n';
  std::istringstream lines(src);
  std::string line;
  while (std::getline(lines, line)) out << "source " << line << '\n';
  return out.str();
}

inline FilterFile read_tdx(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  std::optional<Alphabet> alphabet;
  std::size_t domains = 0, states = 0;
  StateId start = 0;
  bool optimized = false, have_states = false;
  std::uint64_t hash = 0;
  std::string source;
  struct Pending {
    StateId from;
    Symbol symbol;
    std::string out;
    StateId to;
    std::size_t line;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::pair<StateId, StateId>> breaks;

  auto number = [&](const std::string& w) -> std::uint64_t {
    try {
      std::size_t used = 0;
      auto v = std::stoull(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::logic_error&) {
      throw ParseError(line, "expected a number, got '" + w + "'");
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    if (raw.rfind("source", 0) == 0) {
      source += raw.size() > 7 ? raw.substr(7) : "";
      source += '\n';
      continue;
    }
    const auto words = detail::split_words(raw);
    if (words.empty() || words.front().front() == '#') continue;
    const auto& key = words.front();
    if (key == "alphabet") {
      try {
        alphabet = Alphabet(std::vector<std::string>(words.begin() + 1, words.end()));
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    } else if (key == "domains" && words.size() == 2) {
      domains = number(words[1]);
    } else if (key == "states" && words.size() == 2) {
      states = number(words[1]);
      have_states = true;
    } else if (key == "start" && words.size() == 2) {
      start = static_cast<StateId>(number(words[1]));
    } else if (key == "optimized" && words.size() == 2) {
      optimized = number(words[1]) != 0;
    } else if (key == "spec_hash" && words.size() == 2) {
      try {
        hash = std::stoull(words[1], nullptr, 16);
      } catch (const std::logic_error&) {
        throw ParseError(line, "bad spec hash");
      }
    } else if (key == "trans" && words.size() == 5) {
      if (!alphabet) throw ParseError(line, "transition before alphabet");
      auto sym = alphabet->find(words[2]);
      if (!sym) throw ParseError(line, "unknown symbol '" + words[2] + "'");
      pending.push_back({static_cast<StateId>(number(words[1])), *sym, words[3],
                         static_cast<StateId>(number(words[4])), line});
    } else if (key == "break" && words.size() == 4) {
      breaks[words[1]] = {static_cast<StateId>(number(words[2])), static_cast<StateId>(number(words[3]))};
    } else {
      throw ParseError(line, "unrecognized line");
    }
  }
  if (!alphabet || !have_states) throw ParseError(line, "missing alphabet or state count");

  const std::size_t k = alphabet->size();
  std::vector<std::optional<Transducer::Edge>> table(states * k);
  for (const auto& p : pending) {
    if (p.from >= states || p.to >= states) throw ParseError(p.line, "state out of range");
    OutputSymbol out = Lambda{};
    if (p.out == "lam") {
    } else if (p.out.rfind("brk", 0) == 0) {
      auto it = breaks.find(p.out);
      if (it == breaks.end()) throw ParseError(p.line, "undefined break symbol " + p.out);
      out = Break{it->second.first, it->second.second};
    } else if (p.out.size() > 1 && p.out.front() == 'd') {
      line = p.line;
      out = DomainLabel{static_cast<std::size_t>(number(p.out.substr(1)))};
    } else {
      throw ParseError(p.line, "bad output symbol '" + p.out + "'");
    }
    auto& slot = table[p.from * k + p.symbol];
    if (slot) throw ParseError(p.line, "duplicate transition: input projection must be deterministic");
    slot = Transducer::Edge{p.to, out};
  }
  Transducer t(*alphabet, states, start, domains, std::move(table));
  const bool matches = fnv1a(source) == hash;
  return {std::move(t), std::move(source), optimized, hash, matches};
}

}  // namespace apd
