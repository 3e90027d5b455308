#include <gtest/gtest.h>

#include <functional>

#include "k3real/scheme.hpp"
#include "oracles.hpp"

using namespace k3real;

namespace {

std::set<std::string> texts(const std::vector<RealScheme>& schemes) {
  std::set<std::string> out;
  for (const auto& s : schemes) out.insert(render_viro(s));
  return out;
}

}  // namespace

TEST(Viro, ParseAndRenderExamples) {
  EXPECT_EQ(render_viro(parse_viro("⟨9⟩")), "⟨9⟩");
  EXPECT_EQ(render_viro(parse_viro("∅")), "∅");
  EXPECT_TRUE(parse_viro("∅").empty());
  EXPECT_EQ(render_viro(parse_viro("⟨1⟨1⟩ ⊔ 7⟩")), "⟨7 ⊔ 1⟨1⟩⟩");
  EXPECT_EQ(render_viro(parse_viro("⟨1 ⊔ 1 ⊔ 1⟩")), "⟨3⟩");
  EXPECT_EQ(render_viro(parse_viro("⟨1⟨1⟨1⟩⟩⟩")), "⟨1⟨1⟨1⟩⟩⟩");
  EXPECT_EQ(render_viro(parse_viro("⟨1⟨8⟩⟩"), Notation::ascii), "<1<8>>");
}

TEST(Viro, AsciiAliases) {
  EXPECT_EQ(parse_viro("<7 u 1<1>>").roots(), parse_viro("⟨7 ⊔ 1⟨1⟩⟩").roots());
  EXPECT_TRUE(parse_viro("empty").empty());
  EXPECT_EQ(render_viro(parse_viro("empty"), Notation::ascii), "empty");
  EXPECT_EQ(render_viro(parse_viro("⟨7 ⊔ 1⟨1⟩⟩"), Notation::ascii), "<7 u 1<1>>");
}

TEST(Viro, RoundTripsEveryEnumeratedScheme) {
  for (const auto& s : enumerate_schemes(11, 3)) {
    const std::string u = render_viro(s), a = render_viro(s, Notation::ascii);
    ASSERT_EQ(parse_viro(u).roots(), s.roots()) << u;
    ASSERT_EQ(parse_viro(a).roots(), s.roots()) << a;
    ASSERT_EQ(render_viro(parse_viro(a)), u);
  }
}

TEST(Viro, ParseErrorCarriesPosition) {
  try {
    parse_viro("⟨1⟨⟩");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(parse_viro("⟨1"), ParseError);
  EXPECT_THROW(parse_viro("⟨0⟩"), ParseError);
  EXPECT_THROW(parse_viro("⟨1⟩ junk"), ParseError);
  EXPECT_THROW(parse_viro(""), ParseError);
}

TEST(Counts, Examples) {
  EXPECT_EQ(counts(parse_viro("∅")), (SchemeCounts{0, 0, 0, 0, 0}));
  EXPECT_EQ(counts(parse_viro("⟨9⟩")), (SchemeCounts{9, 9, 0, 0, 0}));
  EXPECT_EQ(counts(parse_viro("⟨1⟨1⟨1⟩⟩⟩")), (SchemeCounts{3, 2, 1, 3, 2}));
  EXPECT_EQ(counts(parse_viro("⟨7 ⊔ 1⟨1⟩⟩")), (SchemeCounts{9, 8, 1, 1, 1}));
  EXPECT_EQ(counts(parse_viro("⟨1⟨8⟩⟩")), (SchemeCounts{9, 1, 8, 8, 1}));
}

TEST(EulerCharacteristic, Examples) {
  EXPECT_EQ(euler_char_nonorientable_half(parse_viro("⟨9⟩")), -8);
  EXPECT_EQ(euler_char_nonorientable_half(parse_viro("⟨1⟨1⟨1⟩⟩⟩")), 0);
  EXPECT_EQ(euler_char_nonorientable_half(parse_viro("⟨1⟨8⟩⟩")), 8);
  EXPECT_EQ(euler_char_nonorientable_half(parse_viro("⟨1⟩")), 0);
  EXPECT_THROW(euler_char_nonorientable_half(parse_viro("∅")), DomainError);
}

// The plane splits into B and the orientable half; the latter is the union of
// regions just inside even-depth ovals, each a disc minus its children.
TEST(EulerCharacteristic, ComplementsTheOrientableHalf) {
  for (const auto& s : enumerate_schemes(11, 3)) {
    if (s.empty()) continue;
    std::int64_t orientable = 0;
    std::function<void(const std::vector<Oval>&, std::size_t)> visit = [&](const std::vector<Oval>& ovals,
                                                                           std::size_t depth) {
      for (const auto& o : ovals) {
        if (depth % 2 == 0) orientable += 1 - static_cast<std::int64_t>(o.children.size());
        visit(o.children, depth + 1);
      }
    };
    visit(s.roots(), 0);
    ASSERT_EQ(euler_char_nonorientable_half(s), 1 - orientable) << render_viro(s);
  }
}

TEST(SchemeInvariants, Examples) {
  EXPECT_EQ(scheme_to_invariants(parse_viro("⟨1⟨1⟨1⟩⟩⟩"), DivType::I, 0), (SchemeInvariants{8, 9, 0, 0}));
  EXPECT_EQ(scheme_to_invariants(parse_viro("⟨7 ⊔ 1⟨1⟩⟩"), DivType::I, 1), (SchemeInvariants{2, 3, 0, 1}));
  EXPECT_EQ(scheme_to_invariants(parse_viro("⟨1⟨1⟩⟩"), DivType::II), (SchemeInvariants{9, 10, 1, std::nullopt}));
  EXPECT_EQ(scheme_to_invariants(parse_viro("⟨9⟩"), DivType::II), (SchemeInvariants{2, 1, 1, std::nullopt}));
  EXPECT_EQ(scheme_to_invariants(parse_viro("∅"), DivType::II), (SchemeInvariants{10, 9, 0, 0}));
  EXPECT_THROW(scheme_to_invariants(parse_viro("∅"), DivType::I, 0), DomainError);
  EXPECT_THROW(scheme_to_invariants(parse_viro("⟨9⟩"), DivType::I), DomainError);
  EXPECT_THROW(scheme_to_invariants(parse_viro("⟨9⟩"), DivType::II, 0), DomainError);
}

TEST(SchemeInvariants, OvalCountAndEulerCharacteristic) {
  for (const auto& s : enumerate_schemes(11, 3)) {
    if (s.empty()) continue;
    const SchemeInvariants inv = scheme_to_invariants(s, DivType::II);
    ASSERT_EQ(inv.a + static_cast<std::int64_t>(counts(s).l), 11);
    ASSERT_EQ(inv.t, 9 + euler_char_nonorientable_half(s));
  }
}

TEST(Restrictions, Harnack) {
  EXPECT_TRUE(harnack_check(11, 0, DivType::I));
  EXPECT_FALSE(harnack_check(11, 0, DivType::II));
  EXPECT_TRUE(harnack_check(10, 0, DivType::II));
  EXPECT_TRUE(harnack_check(9, 1, DivType::I));
  EXPECT_FALSE(harnack_check(9, 1, DivType::II));
  EXPECT_FALSE(harnack_check(10, 1, DivType::I));
  EXPECT_FALSE(harnack_check(2, 5, DivType::I));
}

TEST(Restrictions, ArnoldAndInjectivePairs) {
  EXPECT_TRUE(arnold_congruence(parse_viro("⟨1⟨1⟨1⟩⟩⟩"), 0));
  EXPECT_FALSE(arnold_congruence(parse_viro("⟨1⟨1⟨1⟩⟩⟩"), 1));
  EXPECT_TRUE(arnold_congruence(parse_viro("⟨9⟩"), 0));
  EXPECT_TRUE(arnold_congruence(parse_viro("⟨9⟩"), 2));
  EXPECT_FALSE(arnold_congruence(parse_viro("⟨9⟩"), 1));
  EXPECT_TRUE(no_injective_pairs_rule(parse_viro("⟨9⟩"), 0));
  EXPECT_FALSE(no_injective_pairs_rule(parse_viro("⟨9⟩"), 2));
  EXPECT_TRUE(no_injective_pairs_rule(parse_viro("⟨7⟩"), 1));
  EXPECT_TRUE(no_injective_pairs_rule(parse_viro("⟨1⟨1⟩⟩"), 3));
  EXPECT_TRUE(rokhlin_identity(0, 0, 9, 0));
  EXPECT_TRUE(rokhlin_identity(1, 0, 3, 2));
  EXPECT_FALSE(rokhlin_identity(0, 1, 3, 0));
}

TEST(Enumeration, SmallCases) {
  EXPECT_EQ(texts(enumerate_schemes(1, 1)), (std::set<std::string>{"∅", "⟨1⟩"}));
  EXPECT_EQ(texts(enumerate_schemes(2, 2)), (std::set<std::string>{"∅", "⟨1⟩", "⟨2⟩", "⟨1⟨1⟩⟩"}));
  EXPECT_EQ(texts(enumerate_schemes(3, 1)), (std::set<std::string>{"∅", "⟨1⟩", "⟨2⟩", "⟨3⟩"}));
  EXPECT_EQ(enumerate_schemes(3, 0).size(), 1u);
}

TEST(Enumeration, ElevenOvalsThreeLevels) {
  const auto all = enumerate_schemes(11, 3);
  EXPECT_EQ(all.size(), 1272u);
  EXPECT_EQ(texts(all).size(), all.size());
  for (const auto& s : all) {
    ASSERT_LE(counts(s).l, 11u);
    ASSERT_LE(counts(s).max_depth, 2u);
  }
}

TEST(Enumeration, MatchesOvalInsertionOracle) {
  for (const auto& [n, levels] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {6, 3}, {8, 4}, {11, 3}})
    EXPECT_EQ(texts(enumerate_schemes(n, levels)), oracle::grown_schemes(n, levels)) << n << " " << levels;
}

TEST(Enumeration, DeterministicOrder) {
  const auto a = enumerate_schemes(9, 3), b = enumerate_schemes(9, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(render_viro(a[i]), render_viro(b[i]));
  EXPECT_TRUE(a.front().empty());
}

TEST(DivType, Parsing) {
  EXPECT_EQ(parse_divtype("I"), DivType::I);
  EXPECT_EQ(parse_divtype("2"), DivType::II);
  EXPECT_THROW(parse_divtype("III"), std::invalid_argument);
  EXPECT_EQ(to_string(DivType::II), "II");
}
