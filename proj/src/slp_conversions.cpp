#include "crx/slp_conversions.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "crx/detail/interval_algorithms.hpp"
#include "crx/slp_engine.hpp"

namespace crx {

RunLinkAnnotations annotate_runs(const Slp& s) {
    const std::size_t n = s.size();
    RunLinkAnnotations a;
    a.plen.resize(n);
    a.slen.resize(n);
    a.first.resize(n);
    a.last.resize(n);
    a.runs.resize(n);
    a.link.resize(n);
    a.llink.assign(n, 0);
    a.rlink.assign(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto& r = s.rule(v);
        a.link[v] = v;
        if (r.is_terminal) {
            a.plen[v] = a.slen[v] = a.runs[v] = 1;
            a.first[v] = a.last[v] = r.symbol;
            continue;
        }
        const std::uint32_t l = r.left;
        const std::uint32_t rr = r.right;
        const bool merge = a.last[l] == a.first[rr];
        a.first[v] = a.first[l];
        a.last[v] = a.last[rr];
        a.plen[v] = a.plen[l] == s.length(l) && merge ? s.length(l) + a.plen[rr] : a.plen[l];
        a.slen[v] = a.slen[rr] == s.length(rr) && merge ? s.length(rr) + a.slen[l] : a.slen[rr];
        a.runs[v] = a.runs[l] + a.runs[rr] - (merge ? 1 : 0);
        a.llink[v] = a.link[l];
        a.rlink[v] = a.link[rr];
        // A single-run child that merges into the other child's boundary run
        // adds no inner run of its own.
        if (merge && a.runs[rr] == 1) a.link[v] = a.link[l];
        else if (merge && a.runs[l] == 1) a.link[v] = a.link[rr];
    }
    return a;
}

RleString slp_to_rle(const Slp& s) {
    const RunLinkAnnotations a = annotate_runs(s);
    const std::uint32_t root = s.root();
    RleString out;
    if (a.runs[root] == 1) {
        out.runs.push_back({a.first[root], s.length()});
        return out;
    }
    out.runs.reserve(a.runs[root]);
    out.runs.push_back({a.first[root], a.plen[root]});

    // Work items: a run to emit, or the inner runs of a linked variable.
    struct Item {
        bool is_run;
        Run run;
        std::uint32_t var;
    };
    std::vector<Item> stack{{false, {}, a.link[root]}};
    std::vector<Item> pieces;
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        if (item.is_run) {
            out.runs.push_back(item.run);
            continue;
        }
        const std::uint32_t v = item.var;
        if (a.runs[v] < 3) continue;
        const auto& r = s.rule(v);
        // val(v) = val(l) val(r) as runs: first, inner, last of each side, with
        // the two boundary runs fused when they share a symbol.
        pieces.clear();
        auto side = [&](std::uint32_t c, std::uint32_t inner) {
            if (a.runs[c] == 1) {
                pieces.push_back({true, {a.first[c], s.length(c)}, 0});
                return;
            }
            pieces.push_back({true, {a.first[c], a.plen[c]}, 0});
            pieces.push_back({false, {}, inner});
            pieces.push_back({true, {a.last[c], a.slen[c]}, 0});
        };
        side(r.left, a.llink[v]);
        const std::size_t junction = pieces.size();
        side(r.right, a.rlink[v]);
        if (a.last[r.left] == a.first[r.right]) {
            pieces[junction - 1].run.exponent += pieces[junction].run.exponent;
            pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(junction));
        }
        for (std::size_t i = pieces.size() - 1; i-- > 1;) stack.push_back(pieces[i]);
    }
    out.runs.push_back({a.last[root], a.slen[root]});
    return out;
}

// ---------------------------------------------------------------------------
// LZ77

Lz77Factorization slp_to_lz77(const Slp& s, bool self_ref) {
    Lz77Factorization out;
    out.self_referential = self_ref;
    const Length n = s.length();
    Length pos = 1;
    while (pos <= n) {
        const Length hi = self_ref ? n - pos + 1 : std::min(n - pos + 1, pos - 1);
        Length true_max = 0;
        Length false_min = std::numeric_limits<Length>::max();
        Length source = 0;
        auto admissible = [&](Length len) {
            const OccRepr occ = occurrences(s, substring_slp(s, pos, pos + len - 1));
            const bool ok = self_ref ? occ.exists_start_in(1, pos - 1) : occ.exists_fully_within(1, pos - 1);
            if (ok) {
                true_max = std::max(true_max, len);
                if (len == true_max) source = *occ.min_start();
            } else {
                false_min = std::min(false_min, len);
            }
            if (true_max >= false_min) {
                throw Error(ErrorCode::internal, "factor-length predicate is not monotone at position " + std::to_string(pos));
            }
            return ok;
        };
        Length good = 0;
        if (hi >= 1 && admissible(1)) {
            good = 1;
            Length bad = hi + 1;
            Length step = 1;
            while (good < hi) {
                const Length probe = std::min(hi, good + step);
                if (!admissible(probe)) {
                    bad = probe;
                    break;
                }
                good = probe;
                step *= 2;
            }
            while (bad - good > 1) {
                const Length mid = good + (bad - good) / 2;
                if (admissible(mid)) good = mid;
                else bad = mid;
            }
        }
        if (good == 0) {
            out.factors.emplace_back(Literal{char_at(s, pos)});
            pos += 1;
        } else {
            out.factors.emplace_back(Reference{source, good});
            pos += good;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// LZ78 and Bisection

namespace {

class SlpView {
public:
    explicit SlpView(const Slp& s) : slp_(s), fp_(s) {}

    Length length() const { return slp_.length(); }
    Symbol char_at(Length pos) const { return fp_.char_at(slp_.root(), pos); }
    std::uint64_t hash(Length pos, Length len) const { return fp_.hash(pos, len); }

protected:
    const Slp& slp_;
    SlpFingerprints fp_;
};

/// Trusts fingerprints, like prefix_match.
class FingerprintView : public SlpView {
public:
    using SlpView::SlpView;
    bool equal(Length p1, Length p2, Length len) const { return hash(p1, len) == hash(p2, len); }
};

/// Confirms every fingerprint hit with slp_equals.
class CheckedView : public SlpView {
public:
    using SlpView::SlpView;
    bool equal(Length p1, Length p2, Length len) const {
        if (p1 == p2) return true;
        return slp_equals(substring_slp(slp_, p1, p1 + len - 1), substring_slp(slp_, p2, p2 + len - 1));
    }
};

} // namespace

Lz78Factorization slp_to_lz78(const Slp& s, std::uint32_t alphabet_size) {
    const FingerprintView view(s);
    return detail::lz78_over(view, alphabet_size);
}

AdmissibleGrammar slp_to_bisection(const Slp& s) {
    const CheckedView view(s);
    return detail::bisection_over(view);
}

} // namespace crx
