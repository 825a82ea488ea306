#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "crx/text_model.hpp"

namespace crx {

// Direct compressors over uncompressed text. They define the expected output
// of every conversion and are deliberately written for clarity, not speed.

RleString rle_encode(std::span<const Symbol> text);

/// Greedy LZ77 factorization. Each reference points at the leftmost
/// admissible source; a symbol with no earlier occurrence becomes a Literal.
Lz77Factorization naive_lz77(std::span<const Symbol> text, bool self_referential);

/// Greedy LZ78 factorization over a dictionary seeded with `alphabet_size`
/// single symbols.
Lz78Factorization naive_lz78(std::span<const Symbol> text, std::uint32_t alphabet_size);

/// Re-Pair rounds recorded in creation order.
struct RepairTrace {
    std::vector<std::pair<GrammarItem, GrammarItem>> rules;
    std::vector<GrammarItem> final_string;
    /// Among equally frequent bigrams the smallest (left, right) pair wins;
    /// terminals order before variables, variables by index.
    static constexpr std::string_view tie_break = "lexicographic-terminals-first";
};

struct RepairResult {
    AdmissibleGrammar grammar;
    RepairTrace trace;
};

/// Re-Pair with left-greedy non-overlapping counting and replacement. Stops
/// once no bigram occurs twice. Throws Error(empty_input) on empty text.
RepairResult naive_repair(std::span<const Symbol> text);

/// Bisection: split at the largest power of two below the length, reusing one
/// variable per distinct span content. Throws Error(empty_input) on empty text.
AdmissibleGrammar naive_bisection(std::span<const Symbol> text);

/// Chomsky-normal-form conversion with left-associative binarization. Each
/// distinct terminal gets one rule, ahead of all binary rules.
Slp grammar_to_slp(const AdmissibleGrammar& g);

/// Renumbers variables by first use in a leftmost derivation (start last), so
/// that two grammars are isomorphic exactly when their canonical forms match.
AdmissibleGrammar canonical_form(const AdmissibleGrammar& g);

/// Normalized compression distance (C(XY) - min(C(X),C(Y))) / max(C(X),C(Y)).
/// Throws Error(zero_size) if any size is zero.
double ncd(Length c_xy, Length c_x, Length c_y);

} // namespace crx
