#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crx/text_model.hpp"

namespace crx {

/// The run sequence of an RleString with every distinct (symbol, exponent)
/// pair replaced by one meta-symbol.
struct MetaText {
    /// 1-based ranks in lexicographic (symbol, exponent) order, one per run.
    std::vector<std::uint32_t> ranks;
    /// prefix_len[i] = p_1 + ... + p_i, prefix_len[0] = 0.
    std::vector<Length> prefix_len;
};

MetaText rank_runs(const RleString& rle);

/// SA[i] (1-based values) is the start of the i-th smallest suffix.
/// Prefix doubling, O(n log^2 n).
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text);

/// Kasai et al.: LCP[0] = 0, LCP[i] = lcp of the suffixes at SA[i-1] and SA[i].
std::vector<std::uint32_t> build_lcp_array(std::span<const std::uint32_t> text, std::span<const std::uint32_t> sa);

/// Sparse table answering range-minimum queries in O(1).
class RmqTable {
public:
    RmqTable() = default;
    explicit RmqTable(std::span<const std::uint32_t> values);

    /// Minimum over values[lo..hi], inclusive, 0-based.
    std::uint32_t min(std::size_t lo, std::size_t hi) const;

private:
    std::vector<std::vector<std::uint32_t>> levels_;
};

/// Suffix array, LCP array and RMQ over one symbol sequence, answering
/// longest-common-extension queries in O(1).
class LceIndex {
public:
    LceIndex() = default;
    explicit LceIndex(std::vector<std::uint32_t> text);

    std::size_t size() const { return text_.size(); }

    /// Number of equal leading symbols of the suffixes starting at the 1-based
    /// positions i and j. lce(i, i) = n - i + 1.
    std::size_t lce(std::size_t i, std::size_t j) const;

    std::span<const std::uint32_t> suffix_array() const { return sa_; }
    std::span<const std::uint32_t> lcp_array() const { return lcp_; }

private:
    std::vector<std::uint32_t> text_;
    std::vector<std::uint32_t> sa_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::uint32_t> lcp_;
    RmqTable rmq_;
};

} // namespace crx
