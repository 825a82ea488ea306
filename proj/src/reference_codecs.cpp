#include "crx/reference_codecs.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

namespace crx {

RleString rle_encode(std::span<const Symbol> text) {
    RleString out;
    for (Symbol s : text) {
        if (!out.runs.empty() && out.runs.back().symbol == s) {
            ++out.runs.back().exponent;
        } else {
            out.runs.push_back({s, 1});
        }
    }
    return out;
}

Lz77Factorization naive_lz77(std::span<const Symbol> text, bool self_referential) {
    Lz77Factorization out;
    out.self_referential = self_referential;
    const std::size_t n = text.size();
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best_len = 0;
        std::size_t best_src = 0;
        for (std::size_t src = 0; src < pos; ++src) {
            const std::size_t cap = self_referential ? n - pos : std::min(n - pos, pos - src);
            std::size_t len = 0;
            while (len < cap && text[src + len] == text[pos + len]) ++len;
            if (len > best_len) {
                best_len = len;
                best_src = src;
            }
        }
        if (best_len == 0) {
            out.factors.emplace_back(Literal{text[pos]});
            ++pos;
        } else {
            out.factors.emplace_back(Reference{best_src + 1, best_len});
            pos += best_len;
        }
    }
    return out;
}

Lz78Factorization naive_lz78(std::span<const Symbol> text, std::uint32_t alphabet_size) {
    Lz78Factorization out;
    out.alphabet_size = alphabet_size;
    // Trie node 0 is the root; children are keyed by (parent, symbol).
    std::map<std::pair<std::uint64_t, Symbol>, std::uint64_t> child;
    std::vector<std::uint64_t> node_id{0};
    for (Symbol s = 0; s < alphabet_size; ++s) {
        child[{0, s}] = node_id.size();
        node_id.push_back(s + 1);
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] >= alphabet_size) throw Error(ErrorCode::symbol_out_of_range, "symbol outside the alphabet");
        std::uint64_t node = 0;
        while (pos < text.size()) {
            const auto it = child.find({node, text[pos]});
            if (it == child.end()) break;
            node = it->second;
            ++pos;
        }
        out.ids.push_back(node_id[node]);
        if (pos < text.size()) {
            child[{node, text[pos]}] = node_id.size();
            node_id.push_back(std::uint64_t{alphabet_size} + out.ids.size());
        }
    }
    return out;
}

RepairResult naive_repair(std::span<const Symbol> text) {
    if (text.empty()) throw Error(ErrorCode::empty_input, "Re-Pair needs a nonempty text");
    using Bigram = std::pair<GrammarItem, GrammarItem>;
    RepairResult result;
    std::vector<GrammarItem> w;
    w.reserve(text.size());
    for (Symbol s : text) w.push_back(GrammarItem::terminal(s));

    while (w.size() >= 2) {
        // Per-bigram greedy count: an occurrence is taken unless it overlaps
        // the previously taken occurrence of the same bigram.
        std::map<Bigram, std::pair<std::size_t, std::size_t>> counts; // count, next free index
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            auto [it, fresh] = counts.try_emplace({w[i], w[i + 1]}, 0, 0);
            if (fresh || i >= it->second.second) {
                ++it->second.first;
                it->second.second = i + 2;
            }
        }
        const Bigram* best = nullptr;
        std::size_t best_count = 0;
        for (const auto& [bigram, c] : counts) {
            if (c.first > best_count) {
                best_count = c.first;
                best = &bigram;
            }
        }
        if (best_count < 2) break;

        const Bigram chosen = *best;
        const auto var = GrammarItem::variable(static_cast<std::uint32_t>(result.trace.rules.size()));
        result.trace.rules.push_back(chosen);
        std::vector<GrammarItem> next;
        next.reserve(w.size());
        for (std::size_t i = 0; i < w.size();) {
            if (i + 1 < w.size() && w[i] == chosen.first && w[i + 1] == chosen.second) {
                next.push_back(var);
                i += 2;
            } else {
                next.push_back(w[i]);
                ++i;
            }
        }
        w = std::move(next);
    }

    for (const auto& [l, r] : result.trace.rules) result.grammar.rules.push_back({l, r});
    result.grammar.rules.push_back(w);
    result.trace.final_string = std::move(w);
    return result;
}

namespace {

struct BisectionBuilder {
    std::span<const Symbol> text;
    std::map<std::vector<Symbol>, std::uint32_t> seen;
    AdmissibleGrammar grammar;

    GrammarItem build(std::size_t start, std::size_t len) {
        if (len == 1) return GrammarItem::terminal(text[start]);
        std::vector<Symbol> content(text.begin() + start, text.begin() + start + len);
        if (const auto it = seen.find(content); it != seen.end()) return GrammarItem::variable(it->second);
        const std::size_t half = std::bit_floor(len - 1);
        const auto left = build(start, half);
        const auto right = build(start + half, len - half);
        const auto id = static_cast<std::uint32_t>(grammar.rules.size());
        grammar.rules.push_back({left, right});
        seen.emplace(std::move(content), id);
        return GrammarItem::variable(id);
    }
};

} // namespace

AdmissibleGrammar naive_bisection(std::span<const Symbol> text) {
    if (text.empty()) throw Error(ErrorCode::empty_input, "Bisection needs a nonempty text");
    BisectionBuilder b{text, {}, {}};
    const auto root = b.build(0, text.size());
    if (!root.is_variable) b.grammar.rules.push_back({root});
    return std::move(b.grammar);
}

Slp grammar_to_slp(const AdmissibleGrammar& g) {
    const std::size_t n = g.rules.size();
    // Post-order of variables reachable from the start.
    std::vector<std::uint32_t> order;
    std::vector<bool> visited(n, false);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{g.start(), 0}};
    visited[g.start()] = true;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < g.rules[v].size()) {
            const auto item = g.rules[v][next++];
            if (item.is_variable && !visited[item.value]) {
                visited[item.value] = true;
                stack.emplace_back(item.value, 0);
            }
            continue;
        }
        order.push_back(v);
        stack.pop_back();
    }

    std::vector<Slp::Rule> rules;
    std::map<Symbol, std::uint32_t> terminal_var;
    for (auto v : order) {
        for (const auto& item : g.rules[v]) {
            if (!item.is_variable && !terminal_var.contains(item.value)) {
                terminal_var.emplace(item.value, static_cast<std::uint32_t>(rules.size()));
                rules.push_back(Slp::Rule::terminal(item.value));
            }
        }
    }
    std::vector<std::uint32_t> slp_var(n, 0);
    auto resolve = [&](const GrammarItem& item) {
        return item.is_variable ? slp_var[item.value] : terminal_var.at(item.value);
    };
    for (auto v : order) {
        const auto& rhs = g.rules[v];
        std::uint32_t acc = resolve(rhs[0]);
        for (std::size_t i = 1; i < rhs.size(); ++i) {
            rules.push_back(Slp::Rule::pair(acc, resolve(rhs[i])));
            acc = static_cast<std::uint32_t>(rules.size() - 1);
        }
        slp_var[v] = acc;
    }
    // A start rule that is a single variable aliases it; move that rule last.
    const std::uint32_t root = slp_var[g.start()];
    if (root + 1 != rules.size()) {
        std::vector<Slp::Rule> reordered;
        std::vector<std::int64_t> remap(rules.size(), -1);
        std::vector<bool> needed(rules.size(), false);
        needed[root] = true;
        for (std::int64_t i = root; i >= 0; --i) {
            if (!needed[i] || rules[i].is_terminal) continue;
            needed[rules[i].left] = needed[rules[i].right] = true;
        }
        for (std::uint32_t i = 0; i <= root; ++i) {
            if (!needed[i]) continue;
            remap[i] = static_cast<std::int64_t>(reordered.size());
            auto r = rules[i];
            if (!r.is_terminal) {
                r.left = static_cast<std::uint32_t>(remap[r.left]);
                r.right = static_cast<std::uint32_t>(remap[r.right]);
            }
            reordered.push_back(r);
        }
        return Slp(std::move(reordered));
    }
    return Slp(std::move(rules));
}

AdmissibleGrammar canonical_form(const AdmissibleGrammar& g) {
    const std::size_t n = g.rules.size();
    std::vector<std::int64_t> rank(n, -1);
    std::vector<std::uint32_t> preorder;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{g.start(), 0}};
    rank[g.start()] = 0;
    preorder.push_back(g.start());
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == g.rules[v].size()) {
            stack.pop_back();
            continue;
        }
        const auto item = g.rules[v][next++];
        if (item.is_variable && rank[item.value] < 0) {
            rank[item.value] = static_cast<std::int64_t>(preorder.size());
            preorder.push_back(item.value);
            stack.emplace_back(item.value, 0);
        }
    }
    const std::size_t m = preorder.size();
    AdmissibleGrammar out;
    out.rules.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        GrammarRule rhs = g.rules[preorder[k]];
        for (auto& item : rhs) {
            if (item.is_variable) item.value = static_cast<std::uint32_t>(m - 1 - rank[item.value]);
        }
        out.rules[m - 1 - k] = std::move(rhs);
    }
    return out;
}

double ncd(Length c_xy, Length c_x, Length c_y) {
    if (c_xy == 0 || c_x == 0 || c_y == 0) throw Error(ErrorCode::zero_size, "compressed sizes must be positive");
    const double lo = static_cast<double>(std::min(c_x, c_y));
    const double hi = static_cast<double>(std::max(c_x, c_y));
    return (static_cast<double>(c_xy) - lo) / hi;
}

} // namespace crx
