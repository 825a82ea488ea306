#include "crx/suffix_structures.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace crx {

MetaText rank_runs(const RleString& rle) {
    MetaText meta;
    std::vector<std::pair<Symbol, Length>> distinct;
    distinct.reserve(rle.runs.size());
    for (const auto& run : rle.runs) distinct.emplace_back(run.symbol, run.exponent);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    meta.ranks.reserve(rle.runs.size());
    meta.prefix_len.reserve(rle.runs.size() + 1);
    meta.prefix_len.push_back(0);
    for (const auto& run : rle.runs) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), std::pair{run.symbol, run.exponent});
        meta.ranks.push_back(static_cast<std::uint32_t>(it - distinct.begin() + 1));
        meta.prefix_len.push_back(meta.prefix_len.back() + run.exponent);
    }
    return meta;
}

std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> sa(n);
    std::iota(sa.begin(), sa.end(), 0u);
    if (n == 0) return sa;
    std::vector<std::uint64_t> rank(text.begin(), text.end());
    std::vector<std::uint64_t> next(n);
    for (std::size_t k = 1;; k <<= 1) {
        // Second key 0 marks a suffix that ends inside the compared window,
        // so it sorts first; real ranks are shifted up by one.
        auto key = [&](std::uint32_t i) {
            return std::pair{rank[i], i + k < n ? rank[i + k] + 1 : 0};
        };
        std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
        next[sa[0]] = 0;
        for (std::size_t i = 1; i < n; ++i) {
            next[sa[i]] = next[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
        }
        rank.swap(next);
        if (rank[sa[n - 1]] == n - 1 || k >= n) break;
    }
    for (auto& v : sa) ++v;
    return sa;
}

std::vector<std::uint32_t> build_lcp_array(std::span<const std::uint32_t> text, std::span<const std::uint32_t> sa) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> lcp(n, 0);
    std::vector<std::uint32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[sa[i] - 1] = static_cast<std::uint32_t>(i);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[rank[i] - 1] - 1;
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[rank[i]] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    return lcp;
}

RmqTable::RmqTable(std::span<const std::uint32_t> values) {
    levels_.emplace_back(values.begin(), values.end());
    for (std::size_t w = 1; 2 * w <= values.size(); w <<= 1) {
        const auto& prev = levels_.back();
        std::vector<std::uint32_t> level(prev.size() - w);
        for (std::size_t i = 0; i < level.size(); ++i) level[i] = std::min(prev[i], prev[i + w]);
        levels_.push_back(std::move(level));
    }
}

std::uint32_t RmqTable::min(std::size_t lo, std::size_t hi) const {
    const std::size_t k = std::bit_width(hi - lo + 1) - 1;
    return std::min(levels_[k][lo], levels_[k][hi + 1 - (std::size_t{1} << k)]);
}

LceIndex::LceIndex(std::vector<std::uint32_t> text) : text_(std::move(text)) {
    sa_ = build_suffix_array(text_);
    lcp_ = build_lcp_array(text_, sa_);
    rank_.resize(text_.size());
    for (std::size_t i = 0; i < sa_.size(); ++i) rank_[sa_[i] - 1] = static_cast<std::uint32_t>(i);
    rmq_ = RmqTable(lcp_);
}

std::size_t LceIndex::lce(std::size_t i, std::size_t j) const {
    if (i == j) return text_.size() - i + 1;
    std::size_t a = rank_[i - 1];
    std::size_t b = rank_[j - 1];
    if (a > b) std::swap(a, b);
    return rmq_.min(a + 1, b);
}

} // namespace crx
