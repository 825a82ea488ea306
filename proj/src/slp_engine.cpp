#include "crx/slp_engine.hpp"

#include <algorithm>
#include <string>

#include "crx/fingerprint.hpp"

namespace crx {

Symbol char_at(const Slp& slp, Length i) {
    if (i < 1 || i > slp.length()) {
        throw Error(ErrorCode::out_of_range, "position " + std::to_string(i) + " outside 1.." +
                                                 std::to_string(slp.length()));
    }
    std::uint32_t v = slp.root();
    while (!slp.rule(v).is_terminal) {
        const auto& r = slp.rule(v);
        const Length left = slp.length(r.left);
        if (i <= left) {
            v = r.left;
        } else {
            i -= left;
            v = r.right;
        }
    }
    return slp.rule(v).symbol;
}

// ---------------------------------------------------------------------------
// Substring extraction

namespace {

class SubstringBuilder {
public:
    explicit SubstringBuilder(const Slp& slp) : slp_(slp), rules_(slp.rules().begin(), slp.rules().end()) {}

    /// Variable deriving val(v)[from..].
    std::uint32_t suffix(std::uint32_t v, Length from) {
        if (from == 1) return v;
        const auto& r = slp_.rule(v);
        const Length left = slp_.length(r.left);
        if (from > left) return suffix(r.right, from - left);
        return add(suffix(r.left, from), r.right);
    }

    /// Variable deriving val(v)[1..len].
    std::uint32_t prefix(std::uint32_t v, Length len) {
        if (len == slp_.length(v)) return v;
        const auto& r = slp_.rule(v);
        const Length left = slp_.length(r.left);
        if (len <= left) return prefix(r.left, len);
        return add(r.left, prefix(r.right, len - left));
    }

    std::uint32_t add(std::uint32_t l, std::uint32_t r) {
        rules_.push_back(Slp::Rule::pair(l, r));
        return static_cast<std::uint32_t>(rules_.size() - 1);
    }

    /// Keeps the rules reachable from `root`, renumbered in order, root last.
    Slp finish(std::uint32_t root) const {
        std::vector<bool> needed(root + 1, false);
        needed[root] = true;
        for (std::int64_t i = root; i >= 0; --i) {
            const auto& r = rules_[i];
            if (needed[i] && !r.is_terminal) needed[r.left] = needed[r.right] = true;
        }
        std::vector<std::uint32_t> remap(root + 1, 0);
        std::vector<Slp::Rule> out;
        for (std::uint32_t i = 0; i <= root; ++i) {
            if (!needed[i]) continue;
            auto r = rules_[i];
            if (!r.is_terminal) {
                r.left = remap[r.left];
                r.right = remap[r.right];
            }
            remap[i] = static_cast<std::uint32_t>(out.size());
            out.push_back(r);
        }
        return Slp(std::move(out));
    }

private:
    const Slp& slp_;
    std::vector<Slp::Rule> rules_;
};

} // namespace

Slp substring_slp(const Slp& slp, Length i, Length j) {
    if (i < 1 || i > j || j > slp.length()) {
        throw Error(ErrorCode::out_of_range, "substring [" + std::to_string(i) + ", " + std::to_string(j) +
                                                 "] outside 1.." + std::to_string(slp.length()));
    }
    SubstringBuilder b(slp);
    std::uint32_t v = slp.root();
    // Descend to the lowest variable whose span covers [i, j].
    while (!slp.rule(v).is_terminal) {
        const auto& r = slp.rule(v);
        const Length left = slp.length(r.left);
        if (j <= left) {
            v = r.left;
        } else if (i > left) {
            i -= left;
            j -= left;
            v = r.right;
        } else {
            break;
        }
    }
    std::uint32_t root = v;
    if (!(i == 1 && j == slp.length(v))) {
        const auto& r = slp.rule(v);
        const Length left = slp.length(r.left);
        root = b.add(b.suffix(r.left, i), b.prefix(r.right, j - left));
    }
    return b.finish(root);
}

// ---------------------------------------------------------------------------
// Fingerprints

SlpFingerprints::SlpFingerprints(const Slp& slp) : slp_(&slp), hash_(slp.size()), power_(slp.size()) {
    for (std::uint32_t v = 0; v < slp.size(); ++v) {
        const auto& r = slp.rule(v);
        if (r.is_terminal) {
            hash_[v] = kr::digit(r.symbol);
            power_[v] = kr::kBase;
        } else {
            hash_[v] = kr::concat(hash_[r.left], hash_[r.right], power_[r.right]);
            power_[v] = kr::mul(power_[r.left], power_[r.right]);
        }
    }
}

void SlpFingerprints::append(std::uint32_t v, Length from, Length len, std::uint64_t& acc) const {
    while (true) {
        if (from == 1 && len == slp_->length(v)) {
            acc = kr::concat(acc, hash_[v], power_[v]);
            return;
        }
        const auto& r = slp_->rule(v);
        const Length left = slp_->length(r.left);
        if (from + len - 1 <= left) {
            v = r.left;
        } else if (from > left) {
            from -= left;
            v = r.right;
        } else {
            const Length left_part = left - from + 1;
            append(r.left, from, left_part, acc);
            from = 1;
            len -= left_part;
            v = r.right;
        }
    }
}

std::uint64_t SlpFingerprints::hash(std::uint32_t var, Length from, Length len) const {
    std::uint64_t acc = 0;
    if (len > 0) append(var, from, len, acc);
    return acc;
}

Symbol SlpFingerprints::char_at(std::uint32_t v, Length pos) const {
    while (!slp_->rule(v).is_terminal) {
        const auto& r = slp_->rule(v);
        const Length left = slp_->length(r.left);
        if (pos <= left) {
            v = r.left;
        } else {
            pos -= left;
            v = r.right;
        }
    }
    return slp_->rule(v).symbol;
}

namespace {

/// Largest L <= cap with matches(L), given matches is monotone and matches(0).
template <typename Pred>
Length gallop(Length cap, Pred matches) {
    Length good = 0;
    Length step = 1;
    while (good < cap) {
        const Length probe = std::min(cap, good + step);
        if (!matches(probe)) {
            Length lo = good;
            Length hi = probe - 1;
            while (lo < hi) {
                const Length mid = lo + (hi - lo + 1) / 2;
                if (matches(mid)) lo = mid;
                else hi = mid - 1;
            }
            return lo;
        }
        good = probe;
        step *= 2;
    }
    return good;
}

} // namespace

Length common_prefix(const SlpFingerprints& a, std::uint32_t av, Length i, const SlpFingerprints& b,
                     std::uint32_t bv, Length j, Length cap) {
    if (cap == 0 || a.char_at(av, i) != b.char_at(bv, j)) return 0;
    return gallop(cap, [&](Length len) { return a.hash(av, i, len) == b.hash(bv, j, len); });
}

Length common_suffix(const SlpFingerprints& a, std::uint32_t av, Length i, const SlpFingerprints& b,
                     std::uint32_t bv, Length j, Length cap) {
    if (cap == 0 || a.char_at(av, i) != b.char_at(bv, j)) return 0;
    return gallop(cap, [&](Length len) { return a.hash(av, i - len + 1, len) == b.hash(bv, j - len + 1, len); });
}

// ---------------------------------------------------------------------------
// Progressions

bool Progression::contains(Length k) const {
    if (count == 0 || k < first) return false;
    if (step == 0) return k == first;
    const Length d = k - first;
    return d % step == 0 && d / step < count;
}

std::optional<Length> Progression::first_in(Length lo, Length hi) const {
    if (count == 0 || lo > hi) return std::nullopt;
    Length k = first;
    if (k < lo) {
        if (step == 0) return std::nullopt;
        const Length j = (lo - first + step - 1) / step;
        if (j >= count) return std::nullopt;
        k = first + j * step;
    }
    if (k > hi) return std::nullopt;
    return k;
}

// ---------------------------------------------------------------------------
// Occurrences

namespace {

class CrossingTable {
public:
    CrossingTable(const Slp& text, const Slp& pattern)
        : text_(text), pattern_(pattern), ft_(text), fp_(pattern), table_(text.size() * pattern.size()) {
        for (std::uint32_t y = 0; y < pattern.size(); ++y) {
            if (pattern.rule(y).is_terminal) continue;
            for (std::uint32_t x = 0; x < text.size(); ++x) {
                if (text.rule(x).is_terminal || text.length(x) < pattern.length(y)) continue;
                at(x, y) = compute(x, y);
            }
        }
    }

    const Progression& at(std::uint32_t x, std::uint32_t y) const { return table_[x * pattern_.size() + y]; }

private:
    Progression& at(std::uint32_t x, std::uint32_t y) { return table_[x * pattern_.size() + y]; }

    /// val(y) occurs at 1-based position k of val(x).
    bool occurs(std::uint32_t x, Length k, std::uint32_t y) const {
        const Length m = pattern_.length(y);
        return k >= 1 && k + m - 1 <= text_.length(x) && ft_.hash(x, k, m) == fp_.full(y);
    }

    Progression compute(std::uint32_t x, std::uint32_t y) const {
        const auto& px = text_.rule(x);
        const auto& py = pattern_.rule(y);
        const Length boundary = text_.length(px.left);
        const Length a = pattern_.length(py.left);
        const Length m = pattern_.length(y);

        std::vector<Progression> parts;
        // Boundary strictly inside the left part: extend occurrences of Y_l.
        if (a >= 2) {
            const auto& left = at(x, py.left);
            if (!left.empty()) parts.push_back(extend_right(x, y, left));
        }
        // Boundary exactly between the parts.
        if (boundary >= a && occurs(x, boundary - a + 1, y)) parts.push_back({boundary - a + 1, 0, 1});
        // Boundary strictly inside the right part: extend occurrences of Y_r.
        if (m - a >= 2) {
            const auto& right = at(x, py.right);
            if (!right.empty()) parts.push_back(extend_left(x, y, right, a));
        }
        return merge(parts);
    }

    static Progression from_list(const std::vector<Length>& ks) {
        if (ks.empty()) return {};
        if (ks.size() == 1) return {ks[0], 0, 1};
        return {ks[0], ks[1] - ks[0], 2};
    }

    /// Elements k of `starts` (occurrences of Y_l) at which all of Y occurs.
    Progression extend_right(std::uint32_t x, std::uint32_t y, const Progression& starts) const {
        const Length m = pattern_.length(y);
        if (starts.count <= 2) {
            std::vector<Length> ks;
            for (Length j = 0; j < starts.count; ++j) {
                const Length k = starts.first + j * starts.step;
                if (occurs(x, k, y)) ks.push_back(k);
            }
            return from_list(ks);
        }
        // Three or more crossing occurrences of Y_l at distance d make
        // text[first .. last + |Y_l| - 1] d-periodic. Y occurs at a start k iff
        // its own d-periodic prefix (length rho) lines up with the end E of
        // the text's periodic stretch.
        const Length d = starts.step;
        const Length f = starts.first;
        const Length len_x = text_.length(x);
        const Length end = f + d - 1 + common_prefix(ft_, x, f, ft_, x, f + d, len_x - (f + d) + 1);
        const Length rho = d + common_prefix(fp_, y, 1, fp_, y, 1 + d, m - d);
        if (rho == m) {
            if (end + 1 < f + m) return {};
            const Length fit = (end + 1 - m - f) / d + 1;
            return {f, d, std::min(starts.count, fit)};
        }
        if (end + 1 < rho + f) return {};
        const Length k = end + 1 - rho;
        if (starts.contains(k) && occurs(x, k, y)) return {k, 0, 1};
        return {};
    }

    /// Starts k of Y such that k + a is an element of `starts` (occurrences of
    /// Y_r) and all of Y occurs at k. Mirror image of extend_right.
    Progression extend_left(std::uint32_t x, std::uint32_t y, const Progression& starts, Length a) const {
        const Length m = pattern_.length(y);
        if (starts.count <= 2) {
            std::vector<Length> ks;
            for (Length j = 0; j < starts.count; ++j) {
                const Length kr = starts.first + j * starts.step;
                if (kr > a && occurs(x, kr - a, y)) ks.push_back(kr - a);
            }
            return from_list(ks);
        }
        const Length d = starts.step;
        const Length right_len = m - a;
        const Length last_end = starts.last() + right_len - 1;
        const Length begin = last_end - d + 1 - common_suffix(ft_, x, last_end - d, ft_, x, last_end, last_end - d);
        const Length sigma = d + common_suffix(fp_, y, m - d, fp_, y, m, m - d);
        if (sigma == m) {
            Length j0 = 0;
            if (begin + a > starts.first) j0 = (begin + a - starts.first + d - 1) / d;
            if (j0 >= starts.count) return {};
            return {starts.first + j0 * d - a, d, starts.count - j0};
        }
        if (begin + sigma < m + 1) return {};
        const Length k = begin + sigma - m;
        if (starts.contains(k + a) && occurs(x, k, y)) return {k, 0, 1};
        return {};
    }

    /// Union of disjoint parts whose union is known to be a progression.
    static Progression merge(const std::vector<Progression>& parts) {
        Length total = 0;
        Length lo = 0;
        Length hi = 0;
        for (const auto& p : parts) {
            if (p.empty()) continue;
            lo = total == 0 ? p.first : std::min(lo, p.first);
            hi = total == 0 ? p.last() : std::max(hi, p.last());
            total += p.count;
        }
        if (total == 0) return {};
        if (total == 1) return {lo, 0, 1};
        if ((hi - lo) % (total - 1) != 0) {
            throw Error(ErrorCode::internal, "crossing occurrences do not form a progression");
        }
        const Progression merged{lo, (hi - lo) / (total - 1), total};
        for (const auto& p : parts) {
            if (p.empty()) continue;
            if (!merged.contains(p.first) || (p.count > 1 && p.step != merged.step)) {
                throw Error(ErrorCode::internal, "crossing occurrences do not form a progression");
            }
        }
        return merged;
    }

    const Slp& text_;
    const Slp& pattern_;
    SlpFingerprints ft_;
    SlpFingerprints fp_;
    std::vector<Progression> table_;
};

} // namespace

OccRepr::OccRepr(const Slp& text, Length pattern_length, std::vector<Progression> progressions)
    : text_(text), pattern_length_(pattern_length), progressions_(std::move(progressions)),
      count_(text.size(), 0), min_rel_(text.size(), 0) {
    for (std::uint32_t v = 0; v < text_.size(); ++v) {
        const auto& r = text_.rule(v);
        const auto& p = progressions_[v];
        Length best = p.empty() ? 0 : p.first;
        count_[v] = p.count;
        if (!r.is_terminal) {
            count_[v] += count_[r.left] + count_[r.right];
            if (min_rel_[r.left] != 0) best = best == 0 ? min_rel_[r.left] : std::min(best, min_rel_[r.left]);
            if (best == 0 && min_rel_[r.right] != 0) best = text_.length(r.left) + min_rel_[r.right];
        }
        min_rel_[v] = best;
    }
}

bool OccRepr::contains(Length k) const {
    const Length m = pattern_length_;
    if (k < 1 || m == 0 || k + m - 1 > text_.length()) return false;
    std::uint32_t v = text_.root();
    while (!text_.rule(v).is_terminal) {
        const auto& r = text_.rule(v);
        const Length left = text_.length(r.left);
        if (k + m - 1 <= left) {
            v = r.left;
        } else if (k > left) {
            k -= left;
            v = r.right;
        } else {
            return progressions_[v].contains(k);
        }
    }
    return progressions_[v].contains(k);
}

std::optional<Length> OccRepr::min_start() const {
    const Length m = min_rel_.back();
    if (m == 0) return std::nullopt;
    return m;
}

bool OccRepr::exists_in(std::uint32_t v, Length offset, Length lo, Length hi) const {
    const Length begin = offset + 1;
    const Length end = offset + text_.length(v);
    if (count_[v] == 0 || hi < begin || lo > end) return false;
    if (lo <= begin && end <= hi) return true;
    const Length rel_lo = lo > offset ? lo - offset : 1;
    const Length rel_hi = hi - offset;
    if (progressions_[v].first_in(rel_lo, rel_hi)) return true;
    const auto& r = text_.rule(v);
    if (r.is_terminal) return false;
    return exists_in(r.left, offset, lo, hi) || exists_in(r.right, offset + text_.length(r.left), lo, hi);
}

bool OccRepr::exists_start_in(Length lo, Length hi) const {
    if (lo > hi) return false;
    return exists_in(text_.root(), 0, std::max<Length>(lo, 1), hi);
}

bool OccRepr::exists_fully_within(Length lo, Length hi) const {
    if (pattern_length_ == 0 || hi < pattern_length_ || hi - pattern_length_ + 1 < lo) return false;
    return exists_start_in(lo, hi - pattern_length_ + 1);
}

std::vector<Length> OccRepr::enumerate(Length limit) const {
    std::vector<Length> out;
    // In-order walk: left subtree, crossing progression, right subtree.
    struct Frame {
        std::uint32_t var;
        Length offset;
        int stage;
    };
    std::vector<Frame> stack{{text_.root(), 0, 0}};
    while (!stack.empty() && out.size() < limit) {
        Frame& f = stack.back();
        if (count_[f.var] == 0) {
            stack.pop_back();
            continue;
        }
        const auto& r = text_.rule(f.var);
        if (r.is_terminal) {
            if (!progressions_[f.var].empty()) out.push_back(f.offset + 1);
            stack.pop_back();
            continue;
        }
        if (f.stage == 0) {
            f.stage = 1;
            stack.push_back({r.left, f.offset, 0});
        } else if (f.stage == 1) {
            f.stage = 2;
            const auto& p = progressions_[f.var];
            for (Length j = 0; j < p.count && out.size() < limit; ++j) out.push_back(f.offset + p.first + j * p.step);
            stack.push_back({r.right, f.offset + text_.length(r.left), 0});
        } else {
            stack.pop_back();
        }
    }
    return out;
}

OccRepr occurrences(const Slp& text, const Slp& pattern) {
    const Length m = pattern.length();
    std::vector<Progression> progressions(text.size());
    if (m == 1) {
        const Symbol c = pattern.rule(pattern.root()).symbol;
        for (std::uint32_t v = 0; v < text.size(); ++v) {
            const auto& r = text.rule(v);
            if (r.is_terminal && r.symbol == c) progressions[v] = {1, 0, 1};
        }
    } else if (m <= text.length()) {
        const CrossingTable table(text, pattern);
        for (std::uint32_t v = 0; v < text.size(); ++v) progressions[v] = table.at(v, pattern.root());
    }
    return OccRepr(text, m, std::move(progressions));
}

bool slp_equals(const Slp& a, const Slp& b) {
    if (a.length() != b.length()) return false;
    return occurrences(a, b).contains(1);
}

bool prefix_match(const Slp& text, Length pos, const Slp& pattern) {
    const Length m = pattern.length();
    if (pos < 1 || pos + m - 1 > text.length()) {
        throw Error(ErrorCode::out_of_range, "pattern window at " + std::to_string(pos) + " leaves the text");
    }
    const SlpFingerprints ft(text);
    const SlpFingerprints fp(pattern);
    return ft.hash(pos, m) == fp.full(pattern.root());
}

} // namespace crx
