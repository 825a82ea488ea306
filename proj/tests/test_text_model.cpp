#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "crx/container.hpp"
#include "crx/reference_codecs.hpp"
#include "oracles.hpp"

using namespace crx;
using crx::testing::text_of;

namespace {

GrammarItem t(char c) { return GrammarItem::terminal(static_cast<Symbol>(c - 'a')); }
GrammarItem v(std::uint32_t i) { return GrammarItem::variable(i); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::internal;
}

} // namespace

TEST(Validate, RleInvariants) {
    EXPECT_EQ(code_of([] { validate_rle(RleString{{{0, 1}, {0, 2}}}, 2); }), ErrorCode::adjacent_equal_runs);
    EXPECT_EQ(code_of([] { validate_rle(RleString{{{0, 0}}}, 2); }), ErrorCode::zero_exponent);
    EXPECT_EQ(code_of([] { validate_rle(RleString{{{2, 1}}}, 2); }), ErrorCode::symbol_out_of_range);
    EXPECT_NO_THROW(validate_rle(RleString{}, 1));
}

TEST(Validate, SevenRuleSlpContainer) {
    const auto c = make_container(crx::testing::fig_slp(), 2);
    const ValidationReport report = validate(c);
    EXPECT_TRUE(report.ok) << report.message;
    EXPECT_EQ(c.original_length, 13u);
}

TEST(Validate, GrammarInvariants) {
    EXPECT_EQ(code_of([] { validate_grammar(AdmissibleGrammar{{{v(0)}}}, 1); }), ErrorCode::cyclic_grammar);
    EXPECT_EQ(code_of([] { validate_grammar(AdmissibleGrammar{{{t('a')}, {t('a')}}}, 1); }),
              ErrorCode::unreachable_variable);
    EXPECT_EQ(code_of([] { validate_grammar(AdmissibleGrammar{{{}}}, 1); }), ErrorCode::empty_rule);
    EXPECT_EQ(code_of([] { validate_grammar(AdmissibleGrammar{{{v(3)}}}, 1); }), ErrorCode::dangling_reference);
}

TEST(Validate, SlpOrderingAndLengths) {
    using R = Slp::Rule;
    EXPECT_EQ(code_of([] { Slp({R::terminal(0), R::pair(0, 1)}); }), ErrorCode::forward_reference_in_slp);
    EXPECT_EQ(code_of([] { Slp(std::vector<R>{}); }), ErrorCode::empty_input);
    const CompressedContainer wrong{Format::slp, 2, 12, crx::testing::fig_slp()};
    EXPECT_EQ(validate(wrong).code, ErrorCode::length_mismatch);
}

TEST(Validate, LzInvariants) {
    const Lz77Factorization bad{false, {Literal{0}, Reference{1, 2}}};
    EXPECT_EQ(code_of([&] { validate_lz77(bad, 1); }), ErrorCode::dangling_reference);
    const Lz77Factorization good{true, {Literal{0}, Reference{1, 2}}};
    EXPECT_NO_THROW(validate_lz77(good, 1));
    EXPECT_EQ(code_of([] { validate_lz78(Lz78Factorization{1, {1, 3}}); }), ErrorCode::dangling_reference);
}

TEST(Expand, Rle) {
    const RleString r{{{0, 1}, {1, 2}, {0, 3}, {2, 1}, {0, 2}}};
    EXPECT_EQ(crx::testing::string_of(expand(r)), "abbaaacaa");
    EXPECT_TRUE(expand(RleString{}).empty());
    EXPECT_EQ(code_of([] { (void)expand(RleString{{{0, Length{1} << 40}}}, Length{1} << 20); }),
              ErrorCode::budget_exceeded);
}

TEST(Expand, Grammar) {
    // D = {X -> bc, Y -> Xa}, start aYY.
    const AdmissibleGrammar g{{{t('b'), t('c')}, {v(0), t('a')}, {t('a'), v(1), v(1)}}};
    EXPECT_EQ(crx::testing::string_of(expand(g)), "abcabca");
    EXPECT_EQ(crx::testing::string_of(expand(AdmissibleGrammar{{{t('a')}}})), "a");
    EXPECT_EQ(code_of([] { (void)expand(crx::testing::power_slp(30), Length{1} << 20); }), ErrorCode::budget_exceeded);
}

TEST(Expand, Lz) {
    const Lz77Factorization self{true, {Literal{0}, Reference{1, 7}}};
    EXPECT_EQ(crx::testing::string_of(expand(self)), "aaaaaaaa");
    EXPECT_EQ(crx::testing::string_of(expand(Lz78Factorization{1, {1, 2, 1}})), "aaaa");
}

TEST(Slp, CachedAnnotationsMatchRecomputation) {
    std::mt19937_64 rng(2);
    for (int round = 0; round < 200; ++round) {
        const Slp s = crx::testing::random_slp(rng, 12, 4096, 3);
        const SlpAnnotations fresh = recompute_annotations(s);
        for (std::uint32_t i = 0; i < s.size(); ++i) {
            ASSERT_EQ(s.length(i), fresh.lengths[i]);
            ASSERT_EQ(s.height(i), fresh.heights[i]);
        }
        ASSERT_EQ(s.length(), expand(s).size());
    }
}

TEST(Container, SerializationFormat) {
    const auto rle = make_container(rle_encode(text_of("abbaaacaa")), 3);
    EXPECT_EQ(serialize(rle), "CRX1 rle 3 9\n0 1\n1 2\n0 3\n2 1\n0 2\n");
    const auto lz = make_container(Lz77Factorization{true, {Literal{0}, Reference{1, 7}}}, 1);
    EXPECT_EQ(serialize(lz), "CRX1 lz77 1 8 selfref\nL 0\nR 1 7\n");
    const auto slp = make_container(crx::testing::power_slp(2), 1);
    EXPECT_EQ(serialize(slp), "CRX1 slp 1 4\n1 -> t0\n2 -> v1 v1\n3 -> v2 v2\n");
}

TEST(Container, RoundTripsEveryFormat) {
    const Text s = text_of("aababaababaab");
    const std::vector<CompressedContainer> all{
        make_container(rle_encode(s), 2),
        make_container(naive_lz77(s, false), 2),
        make_container(naive_lz77(s, true), 2),
        make_container(naive_lz78(s, 2)),
        make_container(naive_repair(s).grammar, 2),
        make_container(naive_bisection(s), 2),
        make_container(crx::testing::fig_slp(), 2),
    };
    for (const auto& c : all) {
        const std::string text = serialize(c);
        const CompressedContainer back = parse_container(text);
        EXPECT_EQ(serialize(back), text);
        EXPECT_TRUE(validate(back).ok);
        EXPECT_EQ(expand(back), s);
        EXPECT_EQ(back.original_length, s.size());
    }
}

TEST(Container, StrictParsing) {
    EXPECT_EQ(code_of([] { (void)parse_container("CRX1 rle 3 9\n0  1\n"); }), ErrorCode::parse_error);
    EXPECT_EQ(code_of([] { (void)parse_container("CRX2 rle 3 1\n0 1\n"); }), ErrorCode::parse_error);
    EXPECT_EQ(code_of([] { (void)parse_container("CRX1 rle 3 1\n0 01\n"); }), ErrorCode::parse_error);
    EXPECT_EQ(code_of([] { (void)parse_container("CRX1 slp 1 2\n1 -> v2 v2\n2 -> t0\n"); }),
              ErrorCode::forward_reference_in_slp);
    const auto report = validate_text("CRX1 rle 2 3\n0 1\n0 2\n");
    EXPECT_FALSE(report.ok);
    EXPECT_EQ(report.code, ErrorCode::adjacent_equal_runs);
}
