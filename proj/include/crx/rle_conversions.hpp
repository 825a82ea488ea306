#pragma once

#include <utility>
#include <vector>

#include "crx/suffix_structures.hpp"
#include "crx/text_model.hpp"

namespace crx {

/// Position inside an RLE string as (run u, offset q), both 1-based, with
/// 1 <= q <= p_u. The absolute position is p_1 + ... + p_{u-1} + q.
struct RleCursor {
    std::size_t u = 1;
    Length q = 1;
    friend bool operator==(const RleCursor&, const RleCursor&) = default;
};

/// The interval made of the last x symbols of run k-1, the full runs
/// k .. k+l-1 and the first y symbols of run k+l, with 0 <= x < p_{k-1} and
/// 0 <= y < p_{k+l}.
struct RleSpan {
    Length x = 0;
    std::size_t k = 1;
    std::size_t l = 0;
    Length y = 0;
    friend bool operator==(const RleSpan&, const RleSpan&) = default;
};

/// Random access, fingerprints and exact longest common extensions over an
/// RLE string, all without expanding it. Positions are 1-based.
class RleIndex {
public:
    explicit RleIndex(RleString rle);

    const RleString& rle() const { return rle_; }
    std::size_t runs() const { return rle_.runs.size(); }
    Length length() const { return prefix_.back(); }
    /// p_1 + ... + p_j.
    Length prefix(std::size_t j) const { return prefix_[j]; }
    const Run& run(std::size_t u) const { return rle_.runs[u - 1]; }

    RleCursor locate(Length pos) const;
    Length position(RleCursor c) const { return prefix_[c.u - 1] + c.q; }

    RleSpan span(Length i, Length j) const;
    std::pair<Length, Length> interval(const RleSpan& s) const;

    Symbol char_at(Length pos) const { return run(locate(pos).u).symbol; }

    /// Longest common extension of the suffixes at p1 and p2: equal full runs
    /// come from the meta-text LCE, the two boundary runs by arithmetic.
    Length lce(Length p1, Length p2) const;
    bool equal(Length p1, Length p2, Length len) const { return len == 0 || lce(p1, p2) >= len; }

    /// Karp-Rabin fingerprint of S[pos : pos+len-1].
    std::uint64_t hash(Length pos, Length len) const;

private:
    /// Common prefix of the suffixes starting at the first symbols of runs j and u.
    Length extend(std::size_t j, std::size_t u) const;
    std::uint64_t prefix_hash(Length t) const;

    RleString rle_;
    std::vector<Length> prefix_;
    LceIndex meta_;
    std::vector<std::uint64_t> run_hash_; // fingerprint of the first j runs
    std::uint64_t inv_base_minus_one_ = 0;
};

/// Re-Pair working string kept as runs of grammar items with exponents.
struct RepairSimState {
    std::vector<std::pair<GrammarItem, Length>> runs;
    std::vector<std::pair<GrammarItem, GrammarItem>> rules;

    explicit RepairSimState(const RleString& rle);

    /// The bigram Re-Pair replaces next and its non-overlapping left-greedy
    /// count; ties go to the smallest (left, right) pair.
    std::pair<std::pair<GrammarItem, GrammarItem>, Length> most_frequent() const;
    /// Replaces every greedy occurrence of `bigram` with a fresh variable.
    void replace(const std::pair<GrammarItem, GrammarItem>& bigram);
    /// Length of the working string.
    Length length() const;
};

/// Same grammar as naive_repair(expand(r)), computed on runs.
/// Throws Error(empty_input) for an empty RLE.
AdmissibleGrammar rle_to_repair(const RleString& r);

/// Same factorization as naive_lz77(expand(r), self_ref).
Lz77Factorization rle_to_lz77(const RleString& r, bool self_ref);

/// Same factorization as naive_lz78(expand(r), alphabet_size).
Lz78Factorization rle_to_lz78(const RleString& r, std::uint32_t alphabet_size);

/// Same grammar as naive_bisection(expand(r)).
/// Throws Error(empty_input) for an empty RLE.
AdmissibleGrammar rle_to_bisection(const RleString& r);

/// SLP with one doubling chain per distinct symbol, O(n log N) rules.
/// Throws Error(empty_input) for an empty RLE.
Slp rle_to_slp(const RleString& r);

} // namespace crx
