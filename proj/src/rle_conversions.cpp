#include "crx/rle_conversions.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "crx/detail/interval_algorithms.hpp"
#include "crx/fingerprint.hpp"

namespace crx {

namespace {

void require_runs(const RleString& rle) {
    validate_rle(rle, std::numeric_limits<std::uint32_t>::max());
}

/// 1 + B + ... + B^{t-1}.
std::uint64_t geometric(std::uint64_t t, std::uint64_t inv_base_minus_one) {
    return kr::mul(kr::sub(kr::pow(kr::kBase, t), 1), inv_base_minus_one);
}

} // namespace

// ---------------------------------------------------------------------------
// RleIndex

RleIndex::RleIndex(RleString rle) : rle_(std::move(rle)) {
    require_runs(rle_);
    const MetaText meta = rank_runs(rle_);
    prefix_ = meta.prefix_len;
    meta_ = LceIndex(meta.ranks);
    inv_base_minus_one_ = kr::pow(kr::sub(kr::kBase, 1), kr::kModulus - 2);
    run_hash_.reserve(rle_.runs.size() + 1);
    run_hash_.push_back(0);
    for (const auto& run : rle_.runs) {
        const std::uint64_t block = kr::mul(kr::digit(run.symbol), geometric(run.exponent, inv_base_minus_one_));
        run_hash_.push_back(kr::add(kr::mul(run_hash_.back(), kr::pow(kr::kBase, run.exponent)), block));
    }
}

RleCursor RleIndex::locate(Length pos) const {
    if (pos < 1 || pos > length()) {
        throw Error(ErrorCode::out_of_range, "position " + std::to_string(pos) + " outside 1.." + std::to_string(length()));
    }
    const auto it = std::lower_bound(prefix_.begin() + 1, prefix_.end(), pos);
    const auto u = static_cast<std::size_t>(it - prefix_.begin());
    return {u, pos - prefix_[u - 1]};
}

RleSpan RleIndex::span(Length i, Length j) const {
    if (i > j) throw Error(ErrorCode::out_of_range, "empty interval");
    const RleCursor a = locate(i);
    const RleCursor b = locate(j);
    RleSpan s;
    if (a.q == 1) {
        s.k = a.u;
    } else {
        s.x = run(a.u).exponent - a.q + 1;
        s.k = a.u + 1;
    }
    if (a.u == b.u && a.q > 1 && b.q < run(b.u).exponent) {
        throw Error(ErrorCode::out_of_range, "interval lies strictly inside one run");
    }
    if (b.q == run(b.u).exponent) {
        s.l = b.u + 1 - s.k;
    } else {
        s.y = b.q;
        s.l = b.u - s.k;
    }
    return s;
}

std::pair<Length, Length> RleIndex::interval(const RleSpan& s) const {
    return {prefix_[s.k - 1] - s.x + 1, prefix_[s.k + s.l - 1] + s.y};
}

Length RleIndex::extend(std::size_t j, std::size_t u) const {
    const std::size_t n = runs();
    if (j > n || u > n) return 0;
    if (j == u) return length() - prefix_[j - 1];
    const std::size_t l = meta_.lce(j, u);
    Length common = prefix_[j + l - 1] - prefix_[j - 1];
    if (j + l <= n && u + l <= n && run(j + l).symbol == run(u + l).symbol) {
        common += std::min(run(j + l).exponent, run(u + l).exponent);
    }
    return common;
}

Length RleIndex::lce(Length p1, Length p2) const {
    if (p1 == p2) return length() - p1 + 1;
    const RleCursor a = locate(p1);
    const RleCursor b = locate(p2);
    if (run(a.u).symbol != run(b.u).symbol) return 0;
    const Length ra = run(a.u).exponent - a.q + 1;
    const Length rb = run(b.u).exponent - b.q + 1;
    if (ra != rb) return std::min(ra, rb);
    return ra + extend(a.u + 1, b.u + 1);
}

std::uint64_t RleIndex::prefix_hash(Length t) const {
    if (t == 0) return 0;
    const RleCursor c = locate(t);
    const std::uint64_t block = kr::mul(kr::digit(run(c.u).symbol), geometric(c.q, inv_base_minus_one_));
    return kr::add(kr::mul(run_hash_[c.u - 1], kr::pow(kr::kBase, c.q)), block);
}

std::uint64_t RleIndex::hash(Length pos, Length len) const {
    if (len == 0) return 0;
    return kr::sub(prefix_hash(pos + len - 1), kr::mul(prefix_hash(pos - 1), kr::pow(kr::kBase, len)));
}

// ---------------------------------------------------------------------------
// Re-Pair

RepairSimState::RepairSimState(const RleString& rle) {
    runs.reserve(rle.runs.size());
    for (const auto& run : rle.runs) runs.emplace_back(GrammarItem::terminal(run.symbol), run.exponent);
}

std::pair<std::pair<GrammarItem, GrammarItem>, Length> RepairSimState::most_frequent() const {
    // Inside a maximal run x^e the greedy count of xx is e/2; a bigram xy with
    // x != y occurs once per adjacent run pair and never overlaps itself.
    std::map<std::pair<GrammarItem, GrammarItem>, Length> counts;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& [x, e] = runs[i];
        if (e >= 2) counts[{x, x}] += e / 2;
        if (i + 1 < runs.size()) counts[{x, runs[i + 1].first}] += 1;
    }
    std::pair<std::pair<GrammarItem, GrammarItem>, Length> best{{}, 0};
    for (const auto& [bigram, c] : counts) {
        if (c > best.second) best = {bigram, c};
    }
    return best;
}

void RepairSimState::replace(const std::pair<GrammarItem, GrammarItem>& bigram) {
    const auto z = GrammarItem::variable(static_cast<std::uint32_t>(rules.size()));
    rules.push_back(bigram);
    std::vector<std::pair<GrammarItem, Length>> next;
    next.reserve(runs.size() + 1);
    auto push = [&](GrammarItem item, Length e) {
        if (e == 0) return;
        if (!next.empty() && next.back().first == item) next.back().second += e;
        else next.emplace_back(item, e);
    };
    const auto [x, y] = bigram;
    if (x == y) {
        for (const auto& [item, e] : runs) {
            if (item == x) {
                push(z, e / 2);
                push(x, e % 2);
            } else {
                push(item, e);
            }
        }
    } else {
        // Every run of x loses at most its last symbol and every run of y at
        // most its first, so the adjacent pairs never compete.
        std::vector<std::pair<GrammarItem, Length>> cur = runs;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            auto& [item, e] = cur[i];
            if (item == x && i + 1 < cur.size() && cur[i + 1].first == y) {
                push(item, e - 1);
                push(z, 1);
                cur[i + 1].second -= 1;
            } else {
                push(item, e);
            }
        }
    }
    runs = std::move(next);
}

Length RepairSimState::length() const {
    Length total = 0;
    for (const auto& run : runs) total += run.second;
    return total;
}

AdmissibleGrammar rle_to_repair(const RleString& r) {
    require_runs(r);
    if (r.runs.empty()) throw Error(ErrorCode::empty_input, "Re-Pair needs a nonempty text");
    RepairSimState state(r);
    while (true) {
        const auto [bigram, count] = state.most_frequent();
        if (count < 2) break;
        state.replace(bigram);
    }
    AdmissibleGrammar g;
    g.rules.reserve(state.rules.size() + 1);
    for (const auto& [l, rr] : state.rules) g.rules.push_back({l, rr});
    GrammarRule last;
    for (const auto& [item, e] : state.runs) last.insert(last.end(), e, item);
    g.rules.push_back(std::move(last));
    return g;
}

// ---------------------------------------------------------------------------
// LZ77

Lz77Factorization rle_to_lz77(const RleString& r, bool self_ref) {
    const RleIndex index(r);
    Lz77Factorization out;
    out.self_referential = self_ref;
    const Length n = index.length();
    Length emitted = 0;
    Length pos = 1;
    while (pos <= n) {
        const RleCursor cur = index.locate(pos);
        if (index.position(cur) != emitted + 1) {
            throw Error(ErrorCode::internal, "cursor drifted from the emitted prefix");
        }
        const Symbol a = index.run(cur.u).symbol;
        const Length rest = index.run(cur.u).exponent - cur.q + 1;
        Length best_len = 0;
        Length best_src = 0;
        // Inside one earlier run of the same symbol the match length from s
        // only depends on how many symbols of the run remain after s, and peaks
        // where that equals `rest`. The three candidates are the leftmost start
        // and the starts leaving exactly rest and rest-1 symbols.
        for (std::size_t j = 1; j <= cur.u; ++j) {
            if (index.run(j).symbol != a) continue;
            const Length lo = index.prefix(j - 1) + 1;
            const Length hi = std::min(index.prefix(j), pos - 1);
            if (lo > hi) continue;
            const Length end = index.prefix(j) + 1;
            const Length candidates[3] = {lo, end >= rest ? end - rest : 0, end + 1 >= rest ? end + 1 - rest : 0};
            for (const Length s : candidates) {
                if (s < lo || s > hi) continue;
                Length v = index.lce(s, pos);
                if (!self_ref) v = std::min(v, pos - s);
                if (v > best_len) {
                    best_len = v;
                    best_src = s;
                }
            }
        }
        if (best_len == 0) {
            out.factors.emplace_back(Literal{a});
            best_len = 1;
        } else {
            out.factors.emplace_back(Reference{best_src, best_len});
        }
        emitted += best_len;
        pos += best_len;
    }
    return out;
}

// ---------------------------------------------------------------------------
// LZ78 and Bisection

Lz78Factorization rle_to_lz78(const RleString& r, std::uint32_t alphabet_size) {
    const RleIndex index(r);
    return detail::lz78_over(index, alphabet_size);
}

AdmissibleGrammar rle_to_bisection(const RleString& r) {
    const RleIndex index(r);
    return detail::bisection_over(index);
}

// ---------------------------------------------------------------------------
// SLP

Slp rle_to_slp(const RleString& r) {
    require_runs(r);
    if (r.runs.empty()) throw Error(ErrorCode::empty_input, "an SLP needs a nonempty text");
    std::vector<Slp::Rule> rules;
    std::map<Symbol, std::vector<std::uint32_t>> powers; // powers[a][k] derives a^{2^k}
    auto power = [&](Symbol a, unsigned k) {
        auto& chain = powers[a];
        if (chain.empty()) {
            chain.push_back(static_cast<std::uint32_t>(rules.size()));
            rules.push_back(Slp::Rule::terminal(a));
        }
        while (chain.size() <= k) {
            const std::uint32_t half = chain.back();
            chain.push_back(static_cast<std::uint32_t>(rules.size()));
            rules.push_back(Slp::Rule::pair(half, half));
        }
        return chain[k];
    };
    auto concat = [&](std::optional<std::uint32_t> acc, std::uint32_t v) {
        if (!acc) return v;
        rules.push_back(Slp::Rule::pair(*acc, v));
        return static_cast<std::uint32_t>(rules.size() - 1);
    };
    std::optional<std::uint32_t> whole;
    for (const auto& run : r.runs) {
        std::optional<std::uint32_t> block;
        for (int k = 63; k >= 0; --k) {
            if ((run.exponent >> k) & 1) block = concat(block, power(run.symbol, static_cast<unsigned>(k)));
        }
        whole = concat(whole, *block);
    }
    return Slp(std::move(rules));
}

} // namespace crx
