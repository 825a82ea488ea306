#pragma once

#include <optional>
#include <vector>

#include "crx/text_model.hpp"

namespace crx {

/// The i-th symbol of val(root), 1-based, in O(height) steps.
/// Throws Error(out_of_range).
Symbol char_at(const Slp& slp, Length i);

/// An SLP deriving S[i:j]. It keeps the input rules still reachable and adds
/// at most 2*height + 1 rules for the two cut paths, so its size is O(n).
/// Throws Error(out_of_range) unless 1 <= i <= j <= N.
Slp substring_slp(const Slp& slp, Length i, Length j);

/// Per-variable Karp-Rabin fingerprints of one SLP. Holds a pointer to the SLP,
/// which must outlive it.
class SlpFingerprints {
public:
    explicit SlpFingerprints(const Slp& slp);

    const Slp& slp() const { return *slp_; }

    /// Fingerprint of val(var)[from : from+len-1], 1-based, O(height).
    std::uint64_t hash(std::uint32_t var, Length from, Length len) const;
    std::uint64_t hash(Length from, Length len) const { return hash(slp_->root(), from, len); }
    std::uint64_t full(std::uint32_t var) const { return hash_[var]; }

    Symbol char_at(std::uint32_t var, Length pos) const;

private:
    void append(std::uint32_t var, Length from, Length len, std::uint64_t& acc) const;

    const Slp* slp_;
    std::vector<std::uint64_t> hash_;
    std::vector<std::uint64_t> power_;
};

/// Longest common prefix of val(a_var)[i..] and val(b_var)[j..], at most cap.
Length common_prefix(const SlpFingerprints& a, std::uint32_t a_var, Length i, const SlpFingerprints& b,
                     std::uint32_t b_var, Length j, Length cap);
/// Longest common suffix of val(a_var)[..i] and val(b_var)[..j], at most cap.
Length common_suffix(const SlpFingerprints& a, std::uint32_t a_var, Length i, const SlpFingerprints& b,
                     std::uint32_t b_var, Length j, Length cap);

/// Arithmetic progression first, first+step, ..., of `count` elements.
struct Progression {
    Length first = 0;
    Length step = 0;
    Length count = 0;

    bool empty() const { return count == 0; }
    Length last() const { return first + (count - 1) * step; }
    bool contains(Length k) const;
    /// Smallest element in [lo, hi], if any.
    std::optional<Length> first_in(Length lo, Length hi) const;

    friend bool operator==(const Progression&, const Progression&) = default;
};

/// Succinct description of Occ(text, pattern). For every text variable
/// X -> X_l X_r it stores, relative to the start of val(X), the starts of the
/// pattern occurrences that cross the X_l / X_r boundary; these always form one
/// arithmetic progression. For a length-1 pattern the terminal variables
/// deriving that symbol carry the progression {1}. Every occurrence in the
/// text is counted by exactly one node of the derivation tree: the lowest one
/// containing it.
class OccRepr {
public:
    Length pattern_length() const { return pattern_length_; }
    Length text_length() const { return text_.length(); }
    const Progression& progression(std::uint32_t text_var) const { return progressions_[text_var]; }

    bool contains(Length k) const;
    Length count() const { return count_.back(); }
    std::optional<Length> min_start() const;
    /// Some occurrence starts in [lo, hi].
    bool exists_start_in(Length lo, Length hi) const;
    /// Some occurrence lies entirely inside [lo, hi].
    bool exists_fully_within(Length lo, Length hi) const;
    /// All starts in increasing order; stops after `limit` elements.
    std::vector<Length> enumerate(Length limit = kDefaultExpansionLimit) const;

private:
    friend OccRepr occurrences(const Slp& text, const Slp& pattern);
    OccRepr(const Slp& text, Length pattern_length, std::vector<Progression> progressions);

    bool exists_in(std::uint32_t var, Length offset, Length lo, Length hi) const;

    Slp text_;
    Length pattern_length_;
    std::vector<Progression> progressions_;
    std::vector<Length> count_;
    std::vector<Length> min_rel_; // 0 when the subtree holds no occurrence
};

/// Computes the crossing progressions for every (text variable, pattern
/// variable) pair bottom-up; each entry costs O(1) fingerprint-based
/// extension queries, using periodicity to filter whole progressions at once.
OccRepr occurrences(const Slp& text, const Slp& pattern);

/// val(a) == val(b): length check, then membership of position 1.
bool slp_equals(const Slp& a, const Slp& b);

/// val(text)[pos : pos+|pattern|-1] == val(pattern), comparing fingerprints of
/// both sides. Throws Error(out_of_range) if the window leaves the text.
bool prefix_match(const Slp& text, Length pos, const Slp& pattern);

} // namespace crx
