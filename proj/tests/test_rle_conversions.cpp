#include <gtest/gtest.h>

#include <random>

#include "alloc_tracker.hpp"
#include "crx/reference_codecs.hpp"
#include "crx/rle_conversions.hpp"
#include "oracles.hpp"

using namespace crx;
using crx::testing::text_of;

namespace {

RleString rle_of(std::string_view s) { return rle_encode(text_of(s)); }

Lz77Factor ref(Length src, Length len) { return Reference{src, len}; }
Lz77Factor lit(char c) { return Literal{static_cast<Symbol>(c - 'a')}; }

GrammarItem t(char c) { return GrammarItem::terminal(static_cast<Symbol>(c - 'a')); }
GrammarItem v(std::uint32_t i) { return GrammarItem::variable(i); }

} // namespace

TEST(RleIndex, LocateAndPosition) {
    const RleIndex index(rle_of("aaabbaaa"));
    EXPECT_EQ(index.locate(1), (RleCursor{1, 1}));
    EXPECT_EQ(index.locate(4), (RleCursor{2, 1}));
    EXPECT_EQ(index.locate(8), (RleCursor{3, 3}));
    for (Length p = 1; p <= 8; ++p) EXPECT_EQ(index.position(index.locate(p)), p);
    EXPECT_THROW(index.locate(9), Error);
    EXPECT_THROW(index.locate(0), Error);
}

TEST(RleIndex, SpanRoundTrip) {
    const RleIndex index(rle_of("aaabbaaab"));
    EXPECT_EQ(index.span(2, 7), (RleSpan{2, 2, 1, 2}));
    EXPECT_EQ(index.span(1, 5), (RleSpan{0, 1, 2, 0}));
    EXPECT_EQ(index.span(4, 9), (RleSpan{0, 2, 3, 0}));
    for (Length i = 1; i <= 9; ++i) {
        for (Length j = i; j <= 9; ++j) {
            RleSpan s;
            try {
                s = index.span(i, j);
            } catch (const Error&) {
                continue; // strictly inside one run
            }
            EXPECT_EQ(index.interval(s), std::pair(i, j));
        }
    }
    EXPECT_THROW(index.span(2, 2), Error);
}

TEST(RleIndex, LceAndHashMatchBruteForce) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
        const Text text = crx::testing::random_text(rng, 1 + rng() % 40, 1 + rng() % 3);
        const RleIndex index(rle_encode(text));
        for (Length i = 1; i <= text.size(); ++i) {
            for (Length j = 1; j <= text.size(); ++j) {
                const Length l = index.lce(i, j);
                ASSERT_EQ(l, crx::testing::brute_lce(text, i, j));
                const Length len = std::min<Length>(text.size() - std::max(i, j) + 1, 3);
                EXPECT_EQ(index.hash(i, len) == index.hash(j, len), l >= len);
            }
        }
    }
}

TEST(RleToRepair, Examples) {
    EXPECT_EQ(rle_to_repair(rle_of("abab")), (AdmissibleGrammar{{{t('a'), t('b')}, {v(0), v(0)}}}));
    EXPECT_EQ(rle_to_repair(rle_of("aaaa")), (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), v(0)}}}));
    EXPECT_EQ(rle_to_repair(rle_of("aabaab")),
              (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), t('b')}, {v(1), v(1)}}}));
    EXPECT_EQ(rle_to_repair(rle_of("a")), (AdmissibleGrammar{{{t('a')}}}));
    EXPECT_THROW(rle_to_repair(RleString{}), Error);
}

TEST(RleToRepair, SimulationStepsKeepTheText) {
    RepairSimState state(rle_of("aaabababbb"));
    const auto [bigram, count] = state.most_frequent();
    EXPECT_EQ(bigram, std::pair(t('a'), t('b')));
    EXPECT_EQ(count, 3u);
    state.replace(bigram);
    EXPECT_EQ(state.length(), 7u);
    EXPECT_EQ(state.runs.size(), 3u); // a a Z Z Z b b
}

TEST(RleToLz77, Examples) {
    EXPECT_EQ(rle_to_lz77(rle_of("aaabbaaa"), true).factors,
              (std::vector{lit('a'), ref(1, 2), lit('b'), ref(4, 1), ref(1, 3)}));
    EXPECT_EQ(rle_to_lz77(rle_of("aaabbaaa"), false).factors,
              (std::vector{lit('a'), ref(1, 1), ref(1, 1), lit('b'), ref(4, 1), ref(1, 3)}));
}

TEST(RleToLz77, UnaryRunIsTwoFactors) {
    const RleString r{{{0, Length{1} << 20}}};
    const auto lz = rle_to_lz77(r, true);
    EXPECT_EQ(lz.factors, (std::vector{lit('a'), ref(1, (Length{1} << 20) - 1)}));
}

TEST(RleToLz78, Examples) {
    // Ids: 1 = a, 2 = b, then 2 + k for the k-th entry.
    EXPECT_EQ(rle_to_lz78(rle_of("aaaa"), 2).ids, (std::vector<std::uint64_t>{1, 3, 1}));
    EXPECT_EQ(rle_to_lz78(rle_of("ab"), 2).ids, (std::vector<std::uint64_t>{1, 2}));
    const auto fig = rle_to_lz78(rle_of("aababaababaab"), 2);
    EXPECT_EQ(fig.ids.size(), 8u);
    EXPECT_EQ(crx::testing::string_of(expand(fig)), "aababaababaab");
}

TEST(RleToBisection, Examples) {
    // aaaaaa: W -> aa, Y -> WW, start -> YW.
    EXPECT_EQ(rle_to_bisection(rle_of("aaaaaa")),
              (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), v(0)}, {v(1), v(0)}}}));
    EXPECT_EQ(rle_to_bisection(rle_of("ab")), (AdmissibleGrammar{{{t('a'), t('b')}}}));
    const auto g = rle_to_bisection(rle_of("aabbaabb"));
    ASSERT_EQ(g.rules.back().size(), 2u);
    EXPECT_EQ(g.rules.back()[0], g.rules.back()[1]);
}

TEST(RleToSlp, ExpandsToTheText) {
    EXPECT_EQ(expand(rle_to_slp(rle_of("aaabbaaab"))), text_of("aaabbaaab"));
    const Slp big = rle_to_slp(RleString{{{0, Length{1} << 40}, {1, 3}}});
    EXPECT_EQ(big.length(), (Length{1} << 40) + 3);
    EXPECT_LE(big.size(), 50u);
}

TEST(RleConversions, ExhaustiveSmallStringsMatchNaiveCodecs) {
    auto check = [](const Text& s, Symbol sigma) {
        const RleString r = rle_encode(s);
        SCOPED_TRACE(crx::testing::string_of(s));
        ASSERT_EQ(rle_to_lz77(r, true), naive_lz77(s, true));
        ASSERT_EQ(rle_to_lz77(r, false), naive_lz77(s, false));
        ASSERT_EQ(rle_to_lz78(r, sigma), naive_lz78(s, sigma));
        ASSERT_EQ(rle_to_repair(r), naive_repair(s).grammar);
        ASSERT_EQ(rle_to_bisection(r), naive_bisection(s));
    };
    for (std::size_t len = 1; len <= 10; ++len) {
        for (const Text& s : crx::testing::all_strings(len, 2)) check(s, 2);
    }
    for (std::size_t len = 1; len <= 6; ++len) {
        for (const Text& s : crx::testing::all_strings(len, 3)) check(s, 3);
    }
}

TEST(RleConversions, RandomRunHeavyTextsMatchNaiveCodecs) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        RleString r;
        const std::size_t runs = 1 + rng() % 12;
        for (std::size_t i = 0; i < runs; ++i) {
            Symbol c = static_cast<Symbol>(rng() % 3);
            if (!r.runs.empty() && r.runs.back().symbol == c) c = (c + 1) % 3;
            r.runs.push_back({c, 1 + rng() % 9});
        }
        const Text s = expand(r);
        ASSERT_EQ(rle_to_lz77(r, true), naive_lz77(s, true));
        ASSERT_EQ(rle_to_lz77(r, false), naive_lz77(s, false));
        ASSERT_EQ(rle_to_lz78(r, 3), naive_lz78(s, 3));
        ASSERT_EQ(rle_to_repair(r), naive_repair(s).grammar);
        ASSERT_EQ(rle_to_bisection(r), naive_bisection(s));
    }
}

TEST(RleConversions, HugeRunsStayCompressed) {
    const RleString r{{{0, Length{1} << 30}, {1, Length{1} << 30}}};
    crx::testing::reset_peak();
    const std::size_t base = crx::testing::live_bytes();
    const auto lz77 = rle_to_lz77(r, true);
    const auto repair = rle_to_repair(r);
    const auto bisection = rle_to_bisection(r);
    const auto lz78 = rle_to_lz78(r, 2);
    EXPECT_LT(crx::testing::peak_bytes() - base, std::size_t{16} << 20);
    EXPECT_EQ(lz77.length(), Length{1} << 31);
    EXPECT_EQ(derived_length(repair), Length{1} << 31);
    EXPECT_EQ(derived_length(bisection), Length{1} << 31);
    EXPECT_EQ(derived_length(lz78), Length{1} << 31);
}
