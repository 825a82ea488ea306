#include "crx/text_model.hpp"

#include <algorithm>
#include <string>

namespace crx {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::adjacent_equal_runs: return "adjacent-equal-runs";
    case ErrorCode::zero_exponent: return "zero-exponent";
    case ErrorCode::symbol_out_of_range: return "symbol-out-of-range";
    case ErrorCode::cyclic_grammar: return "cyclic-grammar";
    case ErrorCode::unreachable_variable: return "unreachable-variable";
    case ErrorCode::empty_rule: return "empty-rule";
    case ErrorCode::forward_reference_in_slp: return "forward-reference-in-slp";
    case ErrorCode::dangling_reference: return "dangling-reference";
    case ErrorCode::length_mismatch: return "length-mismatch";
    case ErrorCode::length_overflow: return "length-overflow";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::empty_input: return "empty-input";
    case ErrorCode::unreachable_conversion: return "unreachable-conversion";
    case ErrorCode::zero_size: return "zero-size";
    case ErrorCode::internal: return "internal-error";
    }
    return "unknown";
}

namespace {

Length checked_add(Length a, Length b) {
    if (a > kMaxLength || b > kMaxLength - a) {
        throw Error(ErrorCode::length_overflow, "derived length exceeds 2^62");
    }
    return a + b;
}

void check_budget(Length needed, Length limit) {
    if (needed > limit) {
        throw Error(ErrorCode::budget_exceeded, "expansion needs " + std::to_string(needed) +
                                                    " symbols, limit is " + std::to_string(limit));
    }
}

} // namespace

Length RleString::length() const {
    Length total = 0;
    for (const auto& run : runs) total = checked_add(total, run.exponent);
    return total;
}

Length factor_length(const Lz77Factor& factor) {
    if (const auto* ref = std::get_if<Reference>(&factor)) return ref->length;
    return 1;
}

Length Lz77Factorization::length() const {
    Length total = 0;
    for (const auto& f : factors) total = checked_add(total, factor_length(f));
    return total;
}

std::size_t AdmissibleGrammar::size() const {
    std::size_t total = 0;
    for (const auto& rule : rules) total += rule.size();
    return total;
}

Slp::Slp(std::vector<Rule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw Error(ErrorCode::empty_input, "an SLP needs at least one rule");
    lengths_.resize(rules_.size());
    heights_.resize(rules_.size());
    for (std::uint32_t i = 0; i < rules_.size(); ++i) {
        const Rule& r = rules_[i];
        if (r.is_terminal) {
            lengths_[i] = 1;
            heights_[i] = 1;
            continue;
        }
        if (r.left >= i || r.right >= i) {
            throw Error(ErrorCode::forward_reference_in_slp,
                        "rule " + std::to_string(i + 1) + " refers to variable " +
                            std::to_string(std::max(r.left, r.right) + 1));
        }
        lengths_[i] = checked_add(lengths_[r.left], lengths_[r.right]);
        heights_[i] = 1 + std::max(heights_[r.left], heights_[r.right]);
    }
}

SlpAnnotations recompute_annotations(const Slp& slp) {
    SlpAnnotations out;
    out.lengths.resize(slp.size());
    out.heights.resize(slp.size());
    for (std::uint32_t i = 0; i < slp.size(); ++i) {
        const auto& r = slp.rule(i);
        if (r.is_terminal) {
            out.lengths[i] = 1;
            out.heights[i] = 1;
        } else {
            out.lengths[i] = out.lengths[r.left] + out.lengths[r.right];
            out.heights[i] = 1 + std::max(out.heights[r.left], out.heights[r.right]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

void validate_rle(const RleString& rle, std::uint32_t alphabet_size) {
    for (std::size_t i = 0; i < rle.runs.size(); ++i) {
        const Run& run = rle.runs[i];
        const std::string where = "run " + std::to_string(i + 1);
        if (run.exponent == 0) throw Error(ErrorCode::zero_exponent, where);
        if (run.symbol >= alphabet_size) throw Error(ErrorCode::symbol_out_of_range, where);
        if (i > 0 && rle.runs[i - 1].symbol == run.symbol) {
            throw Error(ErrorCode::adjacent_equal_runs, where + " repeats the symbol of run " + std::to_string(i));
        }
    }
    (void)rle.length();
}

void validate_lz77(const Lz77Factorization& lz, std::uint32_t alphabet_size) {
    Length start = 1;
    for (std::size_t i = 0; i < lz.factors.size(); ++i) {
        const std::string where = "factor " + std::to_string(i + 1);
        if (const auto* lit = std::get_if<Literal>(&lz.factors[i])) {
            if (lit->symbol >= alphabet_size) throw Error(ErrorCode::symbol_out_of_range, where);
            start = checked_add(start, 1);
            continue;
        }
        const auto& ref = std::get<Reference>(lz.factors[i]);
        if (ref.length == 0) throw Error(ErrorCode::zero_exponent, where + " has length 0");
        if (ref.source == 0 || ref.source >= start) {
            throw Error(ErrorCode::dangling_reference, where + " copies from position " + std::to_string(ref.source));
        }
        if (!lz.self_referential && ref.length > start - ref.source) {
            throw Error(ErrorCode::dangling_reference, where + " reaches past its own start");
        }
        start = checked_add(start, ref.length);
    }
}

void validate_lz78(const Lz78Factorization& lz) {
    for (std::size_t i = 0; i < lz.ids.size(); ++i) {
        const std::uint64_t id = lz.ids[i];
        // Factor i (0-based) may use the seeds and entries 1..i.
        if (id == 0 || id > std::uint64_t{lz.alphabet_size} + i) {
            throw Error(ErrorCode::dangling_reference,
                        "factor " + std::to_string(i + 1) + " uses unknown id " + std::to_string(id));
        }
    }
    (void)derived_length(lz);
}

namespace {

/// Lengths of all grammar variables; throws on cycles.
std::vector<Length> grammar_lengths(const AdmissibleGrammar& g) {
    const std::size_t n = g.rules.size();
    enum class Mark : std::uint8_t { fresh, open, done };
    std::vector<Mark> mark(n, Mark::fresh);
    std::vector<Length> len(n, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (mark[s] != Mark::fresh) continue;
        stack.emplace_back(s, 0);
        mark[s] = Mark::open;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& rhs = g.rules[v];
            if (next < rhs.size()) {
                const GrammarItem item = rhs[next++];
                if (!item.is_variable) continue;
                if (mark[item.value] == Mark::open) {
                    throw Error(ErrorCode::cyclic_grammar,
                                "variable " + std::to_string(item.value + 1) + " derives itself");
                }
                if (mark[item.value] == Mark::fresh) {
                    mark[item.value] = Mark::open;
                    stack.emplace_back(item.value, 0);
                }
                continue;
            }
            Length total = 0;
            for (const auto& item : rhs) total = checked_add(total, item.is_variable ? len[item.value] : 1);
            len[v] = total;
            mark[v] = Mark::done;
            stack.pop_back();
        }
    }
    return len;
}

} // namespace

void validate_grammar(const AdmissibleGrammar& g, std::uint32_t alphabet_size) {
    if (g.rules.empty()) throw Error(ErrorCode::empty_input, "a grammar needs at least one rule");
    const std::size_t n = g.rules.size();
    for (std::size_t v = 0; v < n; ++v) {
        const std::string where = "variable " + std::to_string(v + 1);
        if (g.rules[v].empty()) throw Error(ErrorCode::empty_rule, where);
        for (const auto& item : g.rules[v]) {
            if (item.is_variable && item.value >= n) {
                throw Error(ErrorCode::dangling_reference, where + " refers to variable " + std::to_string(item.value + 1));
            }
            if (!item.is_variable && item.value >= alphabet_size) {
                throw Error(ErrorCode::symbol_out_of_range, where);
            }
        }
    }
    (void)grammar_lengths(g);
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> todo{g.start()};
    seen[g.start()] = true;
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (const auto& item : g.rules[v]) {
            if (item.is_variable && !seen[item.value]) {
                seen[item.value] = true;
                todo.push_back(item.value);
            }
        }
    }
    const auto it = std::find(seen.begin(), seen.end(), false);
    if (it != seen.end()) {
        throw Error(ErrorCode::unreachable_variable,
                    "variable " + std::to_string(it - seen.begin() + 1) + " is not reachable from the start");
    }
}

void validate_slp(const Slp& slp, std::uint32_t alphabet_size) {
    for (std::uint32_t i = 0; i < slp.size(); ++i) {
        const auto& r = slp.rule(i);
        if (r.is_terminal && r.symbol >= alphabet_size) {
            throw Error(ErrorCode::symbol_out_of_range, "rule " + std::to_string(i + 1));
        }
    }
}

Length derived_length(const AdmissibleGrammar& g) { return grammar_lengths(g)[g.start()]; }

Length derived_length(const Lz78Factorization& lz) {
    std::vector<Length> entry_len;
    entry_len.reserve(lz.ids.size());
    Length total = 0;
    Length prev = 0;
    for (std::size_t i = 0; i < lz.ids.size(); ++i) {
        const std::uint64_t id = lz.ids[i];
        if (id == 0 || id > std::uint64_t{lz.alphabet_size} + i) {
            throw Error(ErrorCode::dangling_reference, "factor " + std::to_string(i + 1));
        }
        if (i > 0) entry_len.push_back(prev + 1);
        const Length len = id <= lz.alphabet_size ? 1 : entry_len[id - lz.alphabet_size - 1];
        total = checked_add(total, len);
        prev = len;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Expansion

Text expand(const RleString& rle, Length limit) {
    check_budget(rle.length(), limit);
    Text out;
    out.reserve(rle.length());
    for (const auto& run : rle.runs) out.insert(out.end(), run.exponent, run.symbol);
    return out;
}

Text expand(const AdmissibleGrammar& g, Length limit) {
    check_budget(derived_length(g), limit);
    Text out;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{g.start(), 0}};
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == g.rules[v].size()) {
            stack.pop_back();
            continue;
        }
        const GrammarItem item = g.rules[v][next++];
        if (item.is_variable) {
            stack.emplace_back(item.value, 0);
        } else {
            out.push_back(item.value);
        }
    }
    return out;
}

Text expand_variable(const Slp& slp, std::uint32_t var, Length limit) {
    check_budget(slp.length(var), limit);
    Text out;
    out.reserve(slp.length(var));
    std::vector<std::uint32_t> stack{var};
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        const auto& r = slp.rule(v);
        if (r.is_terminal) {
            out.push_back(r.symbol);
        } else {
            stack.push_back(r.right);
            stack.push_back(r.left);
        }
    }
    return out;
}

Text expand(const Slp& slp, Length limit) { return expand_variable(slp, slp.root(), limit); }

Text expand(const Lz77Factorization& lz, Length limit) {
    check_budget(lz.length(), limit);
    Text out;
    out.reserve(lz.length());
    for (std::size_t i = 0; i < lz.factors.size(); ++i) {
        if (const auto* lit = std::get_if<Literal>(&lz.factors[i])) {
            out.push_back(lit->symbol);
            continue;
        }
        const auto& ref = std::get<Reference>(lz.factors[i]);
        const Length start = out.size() + 1;
        if (ref.length == 0 || ref.source == 0 || ref.source >= start ||
            (!lz.self_referential && ref.length > start - ref.source)) {
            throw Error(ErrorCode::dangling_reference, "factor " + std::to_string(i + 1));
        }
        // Symbol-by-symbol so that a self-referential source may overlap the target.
        for (Length k = 0; k < ref.length; ++k) out.push_back(out[ref.source - 1 + k]);
    }
    return out;
}

Text expand(const Lz78Factorization& lz, Length limit) {
    check_budget(derived_length(lz), limit);
    struct Entry {
        Length start;
        Length length;
    };
    std::vector<Entry> entries;
    entries.reserve(lz.ids.size());
    Text out;
    Length prev_start = 0;
    Length prev_len = 0;
    for (std::size_t i = 0; i < lz.ids.size(); ++i) {
        const std::uint64_t id = lz.ids[i];
        const Length start = out.size();
        if (i > 0) entries.push_back({prev_start, prev_len + 1});
        if (id <= lz.alphabet_size) {
            out.push_back(static_cast<Symbol>(id - 1));
        } else {
            const Entry e = entries[id - lz.alphabet_size - 1];
            // The newest entry ends with the first symbol of this very factor.
            for (Length k = 0; k < e.length; ++k) out.push_back(out[e.start + k]);
        }
        prev_start = start;
        prev_len = out.size() - start;
    }
    return out;
}

} // namespace crx
