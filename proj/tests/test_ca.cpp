#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace apd;
using namespace apd::ca;

namespace {

const Alphabet kBinary({"0", "1"});

}  // namespace

TEST(Rule, Eca110Table) {
  auto r = rule_from_number(2, 1, 110);
  // 110 = 01101110b: neighborhoods 111..000 -> 0 1 1 0 1 1 1 0
  EXPECT_EQ(r.table, (std::vector<Symbol>{0, 1, 1, 1, 0, 1, 1, 0}));
  EXPECT_EQ(number_from_table(2, r.table), BigInt(110));
}

TEST(Rule, Ranges) {
  EXPECT_THROW(rule_from_number(1, 1, 0), Error);
  EXPECT_THROW(rule_from_number(2, 0, 0), Error);
  EXPECT_THROW(rule_from_number(2, 1, 256), Error);
  EXPECT_NO_THROW(rule_from_number(2, 1, 255));
  // k=3, r=1 has 3^27 rules, past 64 bits once r grows
  BigInt big = boost::multiprecision::pow(BigInt(2), 32) - 1;
  EXPECT_NO_THROW(rule_from_number(2, 2, big));
  EXPECT_THROW(rule_from_number(2, 2, big + 1), Error);
}

TEST(Rule, RoundTripRandomTables) {
  std::mt19937_64 rng(3);
  for (std::size_t k = 2; k <= 4; ++k)
    for (int i = 0; i < 20; ++i) {
      auto table = oracle::random_word(rng, k, neighborhood_count(k, 1));
      auto n = number_from_table(k, table);
      EXPECT_EQ(rule_from_number(k, 1, n).table, table);
    }
}

TEST(Evolve, MatchesDirectEvaluation) {
  std::mt19937_64 rng(11);
  for (auto [k, r, rule] : std::vector<std::tuple<std::size_t, std::size_t, BigInt>>{
           {2, 1, 110}, {2, 1, 18}, {2, 1, 30}, {2, 2, BigInt(2614700074ULL)}, {3, 1, BigInt("1234567890123")}}) {
    auto row = oracle::random_word(rng, k, 37);
    auto d = evolve(rule_from_number(k, r, rule), row, 12);
    ASSERT_EQ(d.rows.size(), 13u);
    Word cur = row;
    for (std::size_t t = 1; t <= 12; ++t) {
      cur = oracle::ca_step(k, r, rule, cur);
      ASSERT_EQ(d.rows[t], cur) << "k=" << k << " r=" << r << " t=" << t;
    }
  }
}

TEST(Evolve, Eca110DomainIsTemporallyInvariant) {
  Word w = kBinary.encode("00010011011111");
  Word row;
  for (int i = 0; i < 3; ++i) row.insert(row.end(), w.begin(), w.end());
  auto d = evolve(rule_from_number(2, 1, 110), row, 20);
  auto dom = cyclic_domain(kBinary, w);
  for (const auto& r : d.rows) {
    Word twice = r;
    twice.insert(twice.end(), r.begin(), r.end());
    EXPECT_TRUE(accepts(dom.automaton(), twice));
  }
}

TEST(InitialConditions, Forms) {
  EXPECT_EQ(parse_initial("word:01^3", kBinary, 0), kBinary.encode("010101"));
  EXPECT_EQ(parse_initial("word:0011", kBinary, 0), kBinary.encode("0011"));
  auto a = parse_initial("random:42", kBinary, 50);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(a, parse_initial("random:42", kBinary, 50));
  EXPECT_NE(a, parse_initial("random:43", kBinary, 50));
  EXPECT_THROW(parse_initial("random:42", kBinary, 0), Error);
  EXPECT_THROW(parse_initial("random:x", kBinary, 5), Error);
  EXPECT_THROW(parse_initial("zeros", kBinary, 5), Error);
  EXPECT_THROW(parse_initial("word:012", kBinary, 5), Error);
}

TEST(SplitMix, ReferenceValues) {
  // First outputs for seed 0 of the reference generator.
  SplitMix64 g(0);
  EXPECT_EQ(g(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g(), 0x6e789e6aa1b965f4ULL);
}

TEST(Diagram, FormatRoundTrip) {
  auto d = evolve(rule_from_number(2, 1, 110), parse_initial("random:7", kBinary, 30), 5);
  auto back = parse_diagram(format_diagram(d, kBinary), kBinary);
  EXPECT_EQ(back.rows, d.rows);
  EXPECT_THROW(parse_diagram("010\n01\n", kBinary), ParseError);
  EXPECT_THROW(parse_diagram("", kBinary), Error);
}

TEST(FilterDiagram, Eca110PureDomain) {
  auto dom = cyclic_domain(kBinary, "00010011011111");
  auto d = evolve(rule_from_number(2, 1, 110), parse_initial("word:00010011011111^4", kBinary, 0), 30);
  auto t = build_filter({dom});
  for (const auto& row : filter_with_transducer(t, d))
    for (const auto& o : row) ASSERT_EQ(o, OutputSymbol(DomainLabel{1}));
  for (const auto& row : filter_with_stack(StackFilter({dom}), d))
    for (const auto& o : row) ASSERT_EQ(o, OutputSymbol(DomainLabel{1}));
}

TEST(FilterDiagram, StackRenderingMarksGaps) {
  // D18 on period "0110": the 11 is the only defect
  StackFilter f({Domain("D18", FiniteAutomaton(kBinary, 2, {0, 1}, {0, 1}, {{0, 0, 1}, {1, 0, 0}, {1, 1, 0}}))});
  SpaceTimeDiagram d{2, {kBinary.encode("0110")}};
  auto row = filter_with_stack(f, d).front();
  // maximal substrings per period: "10 0 1" = positions 3..6 -> cells 3,4,1,2 minus overlap
  auto cover = f.filter_periodic(d.rows.front());
  std::vector<int> hits(4, 0);
  for (const auto& iv : cover.intervals)
    for (std::size_t x = iv.start; x <= iv.end; ++x) ++hits[(x - 1) % 4];
  for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(is_break(row[p]), hits[p] != 1) << p;
}
