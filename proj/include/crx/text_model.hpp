#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "crx/error.hpp"

namespace crx {

/// A symbol is its rank inside a declared alphabet.
using Symbol = std::uint32_t;

/// Lengths and 1-based positions in (possibly huge) uncompressed strings.
using Length = std::uint64_t;

/// Uncompressed text. APIs index it 1-based; the vector itself is 0-based.
using Text = std::vector<Symbol>;

/// Default cap on any expansion, in symbols.
inline constexpr Length kDefaultExpansionLimit = Length{64} << 20;

/// Largest string length the library accepts for any representation.
inline constexpr Length kMaxLength = Length{1} << 62;

// ---------------------------------------------------------------------------
// Run-length encoding

struct Run {
    Symbol symbol = 0;
    Length exponent = 0;

    friend bool operator==(const Run&, const Run&) = default;
};

/// Maximal runs a_1^{p_1} ... a_n^{p_n}.
struct RleString {
    std::vector<Run> runs;

    Length length() const;
    friend bool operator==(const RleString&, const RleString&) = default;
};

// ---------------------------------------------------------------------------
// Lempel-Ziv factorizations

struct Literal {
    Symbol symbol = 0;
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Copy of `length` symbols starting at 1-based position `source`.
struct Reference {
    Length source = 0;
    Length length = 0;
    friend bool operator==(const Reference&, const Reference&) = default;
};

using Lz77Factor = std::variant<Literal, Reference>;

Length factor_length(const Lz77Factor& factor);

struct Lz77Factorization {
    bool self_referential = false;
    std::vector<Lz77Factor> factors;

    Length length() const;
    friend bool operator==(const Lz77Factorization&, const Lz77Factorization&) = default;
};

/// LZ78 output as dictionary ids. Ids 1..alphabet_size are the single symbols;
/// id alphabet_size + k is the entry f_k followed by the first symbol of f_{k+1}.
struct Lz78Factorization {
    std::uint32_t alphabet_size = 0;
    std::vector<std::uint64_t> ids;

    friend bool operator==(const Lz78Factorization&, const Lz78Factorization&) = default;
};

// ---------------------------------------------------------------------------
// Grammars

/// Right-hand-side item: a terminal symbol or a 0-based variable index.
struct GrammarItem {
    bool is_variable = false;
    std::uint32_t value = 0;

    static GrammarItem terminal(Symbol s) { return {false, s}; }
    static GrammarItem variable(std::uint32_t v) { return {true, v}; }

    friend bool operator==(const GrammarItem&, const GrammarItem&) = default;
    friend auto operator<=>(const GrammarItem&, const GrammarItem&) = default;
};

using GrammarRule = std::vector<GrammarItem>;

/// Context-free grammar deriving a single nonempty string. Variable i owns
/// rules[i]; the start variable is the last one.
struct AdmissibleGrammar {
    std::vector<GrammarRule> rules;

    std::uint32_t start() const { return static_cast<std::uint32_t>(rules.size() - 1); }
    /// Total right-hand-side length.
    std::size_t size() const;

    friend bool operator==(const AdmissibleGrammar&, const AdmissibleGrammar&) = default;
};

/// Straight-line program: an admissible grammar in Chomsky normal form where
/// every binary rule only refers to earlier variables. Lengths and heights are
/// cached at construction; a constructed Slp always satisfies its invariants.
class Slp {
public:
    struct Rule {
        bool is_terminal = true;
        Symbol symbol = 0;
        std::uint32_t left = 0;
        std::uint32_t right = 0;

        static Rule terminal(Symbol s) { return {true, s, 0, 0}; }
        static Rule pair(std::uint32_t l, std::uint32_t r) { return {false, 0, l, r}; }

        friend bool operator==(const Rule&, const Rule&) = default;
    };

    /// Throws Error(forward_reference_in_slp) when a rule refers to itself or a
    /// later variable, Error(empty_input) for an empty rule list.
    explicit Slp(std::vector<Rule> rules);

    std::size_t size() const { return rules_.size(); }
    std::uint32_t root() const { return static_cast<std::uint32_t>(rules_.size() - 1); }
    const Rule& rule(std::uint32_t var) const { return rules_[var]; }
    std::span<const Rule> rules() const { return rules_; }

    Length length(std::uint32_t var) const { return lengths_[var]; }
    std::uint32_t height(std::uint32_t var) const { return heights_[var]; }
    Length length() const { return lengths_.back(); }
    std::uint32_t height() const { return heights_.back(); }

    friend bool operator==(const Slp& a, const Slp& b) { return a.rules_ == b.rules_; }

private:
    std::vector<Rule> rules_;
    std::vector<Length> lengths_;
    std::vector<std::uint32_t> heights_;
};

/// Recomputes lengths and heights from scratch; used to cross-check the cache.
struct SlpAnnotations {
    std::vector<Length> lengths;
    std::vector<std::uint32_t> heights;
};
SlpAnnotations recompute_annotations(const Slp& slp);

// ---------------------------------------------------------------------------
// Validation. Each throws crx::Error naming the first violated invariant.

void validate_rle(const RleString& rle, std::uint32_t alphabet_size);
void validate_lz77(const Lz77Factorization& lz, std::uint32_t alphabet_size);
void validate_lz78(const Lz78Factorization& lz);
void validate_grammar(const AdmissibleGrammar& g, std::uint32_t alphabet_size);
void validate_slp(const Slp& slp, std::uint32_t alphabet_size);

/// Length derived by a valid grammar, computed without expansion.
Length derived_length(const AdmissibleGrammar& g);
/// Total decoded length of an LZ78 id sequence, computed without expansion.
Length derived_length(const Lz78Factorization& lz);

// ---------------------------------------------------------------------------
// Guarded expansion. Every overload throws Error(budget_exceeded) when the
// output would exceed `limit` symbols, before allocating it.

Text expand(const RleString& rle, Length limit = kDefaultExpansionLimit);
Text expand(const AdmissibleGrammar& g, Length limit = kDefaultExpansionLimit);
Text expand(const Slp& slp, Length limit = kDefaultExpansionLimit);
Text expand(const Lz77Factorization& lz, Length limit = kDefaultExpansionLimit);
Text expand(const Lz78Factorization& lz, Length limit = kDefaultExpansionLimit);

/// Expansion of a single SLP variable; test and oracle helper.
Text expand_variable(const Slp& slp, std::uint32_t var, Length limit = kDefaultExpansionLimit);

} // namespace crx
