#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "crx/text_model.hpp"

namespace crx::detail {

// LZ78 and Bisection written once against a random-access view of S.
// A view provides
//     Length length() const;
//     Symbol char_at(Length pos) const;
//     std::uint64_t hash(Length pos, Length len) const;      // Karp-Rabin
//     bool equal(Length p1, Length p2, Length len) const;    // exact or trusted
// with 1-based positions. Neither algorithm touches more than O(log N)
// positions per emitted factor or variable.

struct SpanKey {
    Length length;
    std::uint64_t hash;
    friend bool operator==(const SpanKey&, const SpanKey&) = default;
};

struct SpanKeyHash {
    std::size_t operator()(const SpanKey& k) const { return std::hash<std::uint64_t>{}(k.hash ^ (k.length * 0x9e3779b97f4a7c15ull)); }
};

template <typename View>
Lz78Factorization lz78_over(const View& s, std::uint32_t alphabet_size) {
    Lz78Factorization out;
    out.alphabet_size = alphabet_size;
    const Length n = s.length();

    struct Entry {
        Length start;
        std::uint64_t id;
    };
    // Entry k spans S[start_k .. end_k + 1]; entries are pairwise distinct and
    // every prefix of an entry is again an entry or a single symbol, so the
    // lengths that match at a position form an interval [1, L].
    std::unordered_multimap<SpanKey, Entry, SpanKeyHash> dict;
    Length longest = 1;

    auto lookup = [&](Length pos, Length len) -> const Entry* {
        const auto [lo, hi] = dict.equal_range(SpanKey{len, s.hash(pos, len)});
        for (auto it = lo; it != hi; ++it) {
            if (s.equal(it->second.start, pos, len)) return &it->second;
        }
        return nullptr;
    };

    Length pos = 1;
    Length prev_start = 0;
    Length prev_len = 0;
    while (pos <= n) {
        const Symbol c = s.char_at(pos);
        if (c >= alphabet_size) throw Error(ErrorCode::symbol_out_of_range, "symbol outside the alphabet");
        if (prev_len > 0) {
            dict.emplace(SpanKey{prev_len + 1, s.hash(prev_start, prev_len + 1)},
                         Entry{prev_start, std::uint64_t{alphabet_size} + out.ids.size()});
            longest = std::max(longest, prev_len + 1);
        }
        Length lo = 1;
        Length hi = std::min(longest, n - pos + 1);
        std::uint64_t id = std::uint64_t{c} + 1;
        while (lo < hi) {
            const Length mid = lo + (hi - lo + 1) / 2;
            if (const Entry* e = lookup(pos, mid)) {
                lo = mid;
                id = e->id;
            } else {
                hi = mid - 1;
            }
        }
        out.ids.push_back(id);
        prev_start = pos;
        prev_len = lo;
        pos += lo;
    }
    return out;
}

template <typename View>
class BisectionBuilder {
public:
    explicit BisectionBuilder(const View& s) : s_(s) {}

    AdmissibleGrammar run() {
        const GrammarItem root = build(1, s_.length());
        if (!root.is_variable) grammar_.rules.push_back({root});
        return std::move(grammar_);
    }

private:
    GrammarItem build(Length start, Length len) {
        if (len == 1) return GrammarItem::terminal(s_.char_at(start));
        const SpanKey key{len, s_.hash(start, len)};
        const auto [lo, hi] = seen_.equal_range(key);
        for (auto it = lo; it != hi; ++it) {
            if (s_.equal(it->second.first, start, len)) return GrammarItem::variable(it->second.second);
        }
        const Length half = std::bit_floor(len - 1);
        const GrammarItem left = build(start, half);
        const GrammarItem right = build(start + half, len - half);
        const auto id = static_cast<std::uint32_t>(grammar_.rules.size());
        grammar_.rules.push_back({left, right});
        seen_.emplace(key, std::pair{start, id});
        return GrammarItem::variable(id);
    }

    const View& s_;
    std::unordered_multimap<SpanKey, std::pair<Length, std::uint32_t>, SpanKeyHash> seen_;
    AdmissibleGrammar grammar_;
};

template <typename View>
AdmissibleGrammar bisection_over(const View& s) {
    if (s.length() == 0) throw Error(ErrorCode::empty_input, "Bisection needs a nonempty text");
    return BisectionBuilder<View>(s).run();
}

} // namespace crx::detail
