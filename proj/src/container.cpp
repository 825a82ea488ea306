#include "crx/container.hpp"

#include <charconv>
#include <vector>

namespace crx {

std::string_view to_string(Format f) {
    switch (f) {
    case Format::rle: return "rle";
    case Format::lz77: return "lz77";
    case Format::lz78: return "lz78";
    case Format::grammar: return "grammar";
    case Format::slp: return "slp";
    }
    return "?";
}

std::optional<Format> parse_format(std::string_view tag) {
    for (Format f : {Format::rle, Format::lz77, Format::lz78, Format::grammar, Format::slp}) {
        if (tag == to_string(f)) return f;
    }
    return std::nullopt;
}

bool CompressedContainer::self_referential() const {
    const auto* lz = std::get_if<Lz77Factorization>(&payload);
    return lz != nullptr && lz->self_referential;
}

CompressedContainer make_container(RleString rle, std::uint32_t alphabet_size) {
    const Length n = rle.length();
    return {Format::rle, alphabet_size, n, std::move(rle)};
}

CompressedContainer make_container(Lz77Factorization lz, std::uint32_t alphabet_size) {
    const Length n = lz.length();
    return {Format::lz77, alphabet_size, n, std::move(lz)};
}

CompressedContainer make_container(Lz78Factorization lz) {
    const Length n = derived_length(lz);
    const auto sigma = lz.alphabet_size;
    return {Format::lz78, sigma, n, std::move(lz)};
}

CompressedContainer make_container(AdmissibleGrammar g, std::uint32_t alphabet_size) {
    const Length n = derived_length(g);
    return {Format::grammar, alphabet_size, n, std::move(g)};
}

CompressedContainer make_container(Slp slp, std::uint32_t alphabet_size) {
    const Length n = slp.length();
    return {Format::slp, alphabet_size, n, std::move(slp)};
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void put_item(std::string& out, const GrammarItem& item) {
    out += item.is_variable ? 'v' : 't';
    out += std::to_string(item.is_variable ? item.value + 1 : item.value);
}

struct Writer {
    std::string& out;

    void operator()(const RleString& rle) const {
        for (const auto& run : rle.runs) {
            out += std::to_string(run.symbol) + ' ' + std::to_string(run.exponent) + '\n';
        }
    }
    void operator()(const Lz77Factorization& lz) const {
        for (const auto& f : lz.factors) {
            if (const auto* lit = std::get_if<Literal>(&f)) {
                out += "L " + std::to_string(lit->symbol) + '\n';
            } else {
                const auto& ref = std::get<Reference>(f);
                out += "R " + std::to_string(ref.source) + ' ' + std::to_string(ref.length) + '\n';
            }
        }
    }
    void operator()(const Lz78Factorization& lz) const {
        for (auto id : lz.ids) out += std::to_string(id) + '\n';
    }
    void operator()(const AdmissibleGrammar& g) const {
        for (std::size_t v = 0; v < g.rules.size(); ++v) {
            out += std::to_string(v + 1) + " ->";
            for (const auto& item : g.rules[v]) {
                out += ' ';
                put_item(out, item);
            }
            out += '\n';
        }
    }
    void operator()(const Slp& slp) const {
        for (std::uint32_t v = 0; v < slp.size(); ++v) {
            const auto& r = slp.rule(v);
            out += std::to_string(v + 1) + " -> ";
            if (r.is_terminal) {
                put_item(out, GrammarItem::terminal(r.symbol));
            } else {
                put_item(out, GrammarItem::variable(r.left));
                out += ' ';
                put_item(out, GrammarItem::variable(r.right));
            }
            out += '\n';
        }
    }
};

} // namespace

std::string serialize(const CompressedContainer& c) {
    std::string out = "CRX1 ";
    out += to_string(c.format);
    out += ' ' + std::to_string(c.alphabet_size) + ' ' + std::to_string(c.original_length);
    if (c.self_referential()) out += " selfref";
    out += '\n';
    std::visit(Writer{out}, c.payload);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto space = line.find(' ', pos);
        const auto field = line.substr(pos, space == std::string_view::npos ? std::string_view::npos : space - pos);
        if (field.empty()) parse_fail(line_no, "empty field (stray or trailing space)");
        fields.push_back(field);
        if (space == std::string_view::npos) break;
        pos = space + 1;
    }
    return fields;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line_no) {
    std::uint64_t value = 0;
    // Leading zeros would break byte-exact round trips.
    if (s.size() > 1 && s[0] == '0') parse_fail(line_no, "leading zero in '" + std::string(s) + "'");
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        parse_fail(line_no, "expected a decimal integer, got '" + std::string(s) + "'");
    }
    return value;
}

std::uint32_t parse_u32(std::string_view s, std::size_t line_no) {
    const auto v = parse_uint(s, line_no);
    if (v > UINT32_MAX) parse_fail(line_no, "value too large");
    return static_cast<std::uint32_t>(v);
}

GrammarItem parse_item(std::string_view s, std::size_t line_no) {
    if (s.size() < 2 || (s[0] != 't' && s[0] != 'v')) parse_fail(line_no, "bad item '" + std::string(s) + "'");
    const auto value = parse_u32(s.substr(1), line_no);
    if (s[0] == 't') return GrammarItem::terminal(value);
    if (value == 0) parse_fail(line_no, "variables are numbered from 1");
    return GrammarItem::variable(value - 1);
}

/// Parses `<var> -> items...` and checks the variable numbering.
std::vector<GrammarItem> parse_rule(const std::vector<std::string_view>& f, std::size_t expected_var,
                                    std::size_t line_no) {
    if (f.size() < 3 || f[1] != "->") parse_fail(line_no, "expected '<var> -> <item>+'");
    if (parse_uint(f[0], line_no) != expected_var) {
        parse_fail(line_no, "expected variable " + std::to_string(expected_var));
    }
    std::vector<GrammarItem> items;
    for (std::size_t i = 2; i < f.size(); ++i) items.push_back(parse_item(f[i], line_no));
    return items;
}

} // namespace

CompressedContainer parse_container(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) parse_fail(1, "missing header");

    const auto header = split_fields(lines[0], 1);
    if (header.size() < 4 || header.size() > 5 || header[0] != "CRX1") {
        parse_fail(1, "expected 'CRX1 <format> <alphabet_size> <N> [selfref]'");
    }
    const auto format = parse_format(header[1]);
    if (!format) parse_fail(1, "unknown format '" + std::string(header[1]) + "'");
    const bool self_ref = header.size() == 5;
    if (self_ref && (header[4] != "selfref" || *format != Format::lz77)) {
        parse_fail(1, "only lz77 containers take the 'selfref' flag");
    }

    CompressedContainer c;
    c.format = *format;
    c.alphabet_size = parse_u32(header[2], 1);
    c.original_length = parse_uint(header[3], 1);

    switch (*format) {
    case Format::rle: {
        RleString rle;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i], i + 1);
            if (f.size() != 2) parse_fail(i + 1, "expected '<sym> <exp>'");
            rle.runs.push_back({parse_u32(f[0], i + 1), parse_uint(f[1], i + 1)});
        }
        c.payload = std::move(rle);
        break;
    }
    case Format::lz77: {
        Lz77Factorization lz;
        lz.self_referential = self_ref;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i], i + 1);
            if (f.size() == 2 && f[0] == "L") {
                lz.factors.emplace_back(Literal{parse_u32(f[1], i + 1)});
            } else if (f.size() == 3 && f[0] == "R") {
                lz.factors.emplace_back(Reference{parse_uint(f[1], i + 1), parse_uint(f[2], i + 1)});
            } else {
                parse_fail(i + 1, "expected 'L <sym>' or 'R <src> <len>'");
            }
        }
        c.payload = std::move(lz);
        break;
    }
    case Format::lz78: {
        Lz78Factorization lz;
        lz.alphabet_size = c.alphabet_size;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split_fields(lines[i], i + 1);
            if (f.size() != 1) parse_fail(i + 1, "expected '<id>'");
            lz.ids.push_back(parse_uint(f[0], i + 1));
        }
        c.payload = std::move(lz);
        break;
    }
    case Format::grammar: {
        AdmissibleGrammar g;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            g.rules.push_back(parse_rule(split_fields(lines[i], i + 1), i, i + 1));
        }
        c.payload = std::move(g);
        break;
    }
    case Format::slp: {
        std::vector<Slp::Rule> rules;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto items = parse_rule(split_fields(lines[i], i + 1), i, i + 1);
            if (items.size() == 1 && !items[0].is_variable) {
                rules.push_back(Slp::Rule::terminal(items[0].value));
            } else if (items.size() == 2 && items[0].is_variable && items[1].is_variable) {
                rules.push_back(Slp::Rule::pair(items[0].value, items[1].value));
            } else {
                parse_fail(i + 1, "SLP rules are 't<code>' or 'v<l> v<r>'");
            }
        }
        if (rules.empty()) parse_fail(lines.size(), "an SLP needs at least one rule");
        c.payload = Slp(std::move(rules));
        break;
    }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

Length payload_length(const CompressedContainer& c) {
    return std::visit(
        [&](const auto& p) -> Length {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RleString>) {
                validate_rle(p, c.alphabet_size);
                return p.length();
            } else if constexpr (std::is_same_v<T, Lz77Factorization>) {
                validate_lz77(p, c.alphabet_size);
                return p.length();
            } else if constexpr (std::is_same_v<T, Lz78Factorization>) {
                if (p.alphabet_size != c.alphabet_size) {
                    throw Error(ErrorCode::symbol_out_of_range, "LZ78 alphabet differs from the header");
                }
                validate_lz78(p);
                return derived_length(p);
            } else if constexpr (std::is_same_v<T, AdmissibleGrammar>) {
                validate_grammar(p, c.alphabet_size);
                return derived_length(p);
            } else {
                validate_slp(p, c.alphabet_size);
                return p.length();
            }
        },
        c.payload);
}

Format payload_format(const Payload& p) {
    switch (p.index()) {
    case 0: return Format::rle;
    case 1: return Format::lz77;
    case 2: return Format::lz78;
    case 3: return Format::grammar;
    default: return Format::slp;
    }
}

} // namespace

void require_valid(const CompressedContainer& c) {
    if (payload_format(c.payload) != c.format) {
        throw Error(ErrorCode::parse_error, "payload does not match the format tag");
    }
    const Length n = payload_length(c);
    if (n != c.original_length) {
        throw Error(ErrorCode::length_mismatch,
                    "header says N=" + std::to_string(c.original_length) + ", payload derives " + std::to_string(n));
    }
}

ValidationReport validate(const CompressedContainer& c) {
    try {
        require_valid(c);
    } catch (const Error& e) {
        return {false, e.code(), e.what()};
    }
    return {};
}

ValidationReport validate_text(std::string_view text) {
    try {
        return validate(parse_container(text));
    } catch (const Error& e) {
        return {false, e.code(), e.what()};
    }
}

std::size_t compressed_size(const CompressedContainer& c) {
    return std::visit(
        [](const auto& p) -> std::size_t {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RleString>) return p.runs.size();
            else if constexpr (std::is_same_v<T, Lz77Factorization>) return p.factors.size();
            else if constexpr (std::is_same_v<T, Lz78Factorization>) return p.ids.size();
            else if constexpr (std::is_same_v<T, AdmissibleGrammar>) return p.size();
            else return p.size();
        },
        c.payload);
}

Text expand(const CompressedContainer& c, Length limit) {
    return std::visit([limit](const auto& p) { return expand(p, limit); }, c.payload);
}

} // namespace crx
