#include <gtest/gtest.h>

#include <map>
#include <random>

#include "crx/reference_codecs.hpp"
#include "oracles.hpp"

using namespace crx;
using crx::testing::string_of;
using crx::testing::text_of;

namespace {

GrammarItem t(char c) { return GrammarItem::terminal(static_cast<Symbol>(c - 'a')); }
GrammarItem v(std::uint32_t i) { return GrammarItem::variable(i); }

/// Factor strings of an LZ77 factorization, decoded one by one.
std::vector<std::string> lz77_strings(const Lz77Factorization& lz) {
    const std::string all = string_of(expand(lz));
    std::vector<std::string> out;
    std::size_t at = 0;
    for (const auto& f : lz.factors) {
        out.push_back(all.substr(at, factor_length(f)));
        at += factor_length(f);
    }
    return out;
}

std::vector<std::string> lz78_strings(const Lz78Factorization& lz) {
    std::vector<std::string> out;
    std::string all;
    for (std::size_t i = 1; i <= lz.ids.size(); ++i) {
        const std::string prefix = string_of(expand(Lz78Factorization{lz.alphabet_size, {lz.ids.begin(), lz.ids.begin() + i}}));
        out.push_back(prefix.substr(all.size()));
        all = prefix;
    }
    return out;
}

using Strings = std::vector<std::string>;

} // namespace

TEST(RleEncode, Examples) {
    EXPECT_EQ(rle_encode(text_of("abbaaacaa")), (RleString{{{0, 1}, {1, 2}, {0, 3}, {2, 1}, {0, 2}}}));
    EXPECT_TRUE(rle_encode(Text{}).runs.empty());
    EXPECT_EQ(rle_encode(text_of("aababaababaab")).runs.size(), 10u);
}

TEST(NaiveLz77, Examples) {
    EXPECT_EQ(lz77_strings(naive_lz77(text_of("aaabbaaa"), false)), (Strings{"a", "a", "a", "b", "b", "aaa"}));
    EXPECT_EQ(lz77_strings(naive_lz77(text_of("aaabbaaa"), true)), (Strings{"a", "aa", "b", "b", "aaa"}));
    EXPECT_EQ(lz77_strings(naive_lz77(text_of("aababaababaab"), false)),
              (Strings{"a", "a", "b", "ab", "aabab", "aab"}));
}

TEST(NaiveLz78, Examples) {
    EXPECT_EQ(lz78_strings(naive_lz78(text_of("aaaa"), 1)), (Strings{"a", "aa", "a"}));
    EXPECT_EQ(lz78_strings(naive_lz78(text_of("aababaababaab"), 2)),
              (Strings{"a", "a", "b", "ab", "aa", "ba", "ba", "ab"}));
    EXPECT_EQ(naive_lz78(text_of("b"), 2).ids, (std::vector<std::uint64_t>{2}));
}

TEST(NaiveRepair, Examples) {
    EXPECT_EQ(naive_repair(text_of("abab")).grammar, (AdmissibleGrammar{{{t('a'), t('b')}, {v(0), v(0)}}}));
    EXPECT_EQ(naive_repair(text_of("aaaa")).grammar, (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), v(0)}}}));
    EXPECT_EQ(naive_repair(text_of("aabaab")).grammar,
              (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), t('b')}, {v(1), v(1)}}}));
    EXPECT_THROW(naive_repair(Text{}), Error);
}

TEST(NaiveRepair, FinalStringHasNoRepeatedBigram) {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 200; ++round) {
        const Text s = crx::testing::random_text(rng, 1 + rng() % 60, 1 + rng() % 3);
        const RepairResult r = naive_repair(s);
        const auto& w = r.trace.final_string;
        std::map<std::pair<GrammarItem, GrammarItem>, int> counts;
        std::size_t taken_end = 0;
        std::pair<GrammarItem, GrammarItem> last{};
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const std::pair bigram{w[i], w[i + 1]};
            // Overlapping xx inside xxx counts once.
            if (bigram == last && i < taken_end) continue;
            ++counts[bigram];
            last = bigram;
            taken_end = i + 2;
        }
        for (const auto& [bigram, c] : counts) ASSERT_LT(c, 2);
        ASSERT_EQ(expand(r.grammar), s);
    }
}

TEST(NaiveBisection, Examples) {
    EXPECT_EQ(naive_bisection(text_of("aaaaaa")),
              (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), v(0)}, {v(1), v(0)}}}));
    EXPECT_EQ(naive_bisection(text_of("ab")), (AdmissibleGrammar{{{t('a'), t('b')}}}));
    EXPECT_EQ(naive_bisection(text_of("aaaa")), (AdmissibleGrammar{{{t('a'), t('a')}, {v(0), v(0)}}}));
}

TEST(NaiveBisection, EqualSpansShareOneVariable) {
    std::mt19937_64 rng(6);
    for (int round = 0; round < 100; ++round) {
        const Text s = crx::testing::random_text(rng, 1 + rng() % 80, 1 + rng() % 2);
        const AdmissibleGrammar g = naive_bisection(s);
        const Slp slp = grammar_to_slp(g);
        std::vector<Text> value(g.rules.size());
        std::map<Text, int> seen;
        for (std::uint32_t i = 0; i < g.rules.size(); ++i) {
            for (const auto& item : g.rules[i]) {
                if (item.is_variable) value[i].insert(value[i].end(), value[item.value].begin(), value[item.value].end());
                else value[i].push_back(item.value);
            }
            ASSERT_EQ(++seen[value[i]], 1);
        }
        ASSERT_EQ(expand(slp), s);
    }
}

TEST(GrammarToSlp, Examples) {
    const Slp abc = grammar_to_slp(AdmissibleGrammar{{{t('a'), t('b'), t('c')}}});
    using R = Slp::Rule;
    EXPECT_EQ(abc, Slp({R::terminal(0), R::terminal(1), R::terminal(2), R::pair(0, 1), R::pair(3, 2)}));
    const AdmissibleGrammar rp = naive_repair(text_of("aabaab")).grammar;
    EXPECT_EQ(expand(grammar_to_slp(rp)), text_of("aabaab"));
    EXPECT_LE(grammar_to_slp(rp).size(), 2 * rp.size());
}

TEST(CanonicalForm, IgnoresNumbering) {
    const AdmissibleGrammar a{{{t('a'), t('b')}, {t('c'), t('c')}, {v(1), v(0), v(0)}}};
    const AdmissibleGrammar b{{{t('c'), t('c')}, {t('a'), t('b')}, {v(0), v(1), v(1)}}};
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    EXPECT_NE(canonical_form(a), canonical_form(naive_bisection(text_of("ccabab"))));
}

TEST(Ncd, Arithmetic) {
    EXPECT_DOUBLE_EQ(ncd(5, 5, 5), 0.0);
    EXPECT_DOUBLE_EQ(ncd(10, 4, 6), 1.0);
    EXPECT_THROW(ncd(0, 1, 1), Error);
}

TEST(ReferenceCodecs, ExhaustiveRoundTrips) {
    auto check = [](const Text& s, Symbol sigma) {
        ASSERT_EQ(expand(rle_encode(s)), s);
        const auto plain = naive_lz77(s, false);
        const auto self = naive_lz77(s, true);
        ASSERT_EQ(expand(plain), s);
        ASSERT_EQ(expand(self), s);
        ASSERT_GE(plain.factors.size(), self.factors.size());
        ASSERT_EQ(expand(naive_lz78(s, sigma)), s);
        ASSERT_EQ(expand(naive_repair(s).grammar), s);
        ASSERT_EQ(expand(naive_bisection(s)), s);
    };
    for (std::size_t len = 1; len <= 12; ++len) {
        for (const Text& s : crx::testing::all_strings(len, 2)) check(s, 2);
    }
    for (std::size_t len = 1; len <= 7; ++len) {
        for (const Text& s : crx::testing::all_strings(len, 3)) check(s, 3);
    }
}
