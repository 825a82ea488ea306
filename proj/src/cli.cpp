#include "crx/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <sstream>

#include "crx/reference_codecs.hpp"
#include "crx/rle_conversions.hpp"
#include "crx/slp_conversions.hpp"
#include "crx/slp_engine.hpp"

namespace crx {

CompressedContainer encode_text(const Text& text, std::string_view codec, bool self_ref, std::uint32_t alphabet_size) {
    if (codec == "rle") return make_container(rle_encode(text), alphabet_size);
    if (codec == "lz77") return make_container(naive_lz77(text, self_ref), alphabet_size);
    if (codec == "lz78") return make_container(naive_lz78(text, alphabet_size));
    if (codec == "repair") return make_container(naive_repair(text).grammar, alphabet_size);
    if (codec == "bisection") return make_container(naive_bisection(text), alphabet_size);
    throw Error(ErrorCode::parse_error, "unknown codec '" + std::string(codec) + "'");
}

// ---------------------------------------------------------------------------
// Routing

namespace {

constexpr std::array kEdges{
    ConversionEdge{Format::rle, Format::lz77, "lz77"},       ConversionEdge{Format::rle, Format::lz78, "lz78"},
    ConversionEdge{Format::rle, Format::grammar, "repair"},  ConversionEdge{Format::rle, Format::grammar, "bisection"},
    ConversionEdge{Format::slp, Format::rle, "rle"},         ConversionEdge{Format::slp, Format::lz77, "lz77"},
    ConversionEdge{Format::slp, Format::lz78, "lz78"},       ConversionEdge{Format::slp, Format::grammar, "bisection"},
    ConversionEdge{Format::grammar, Format::slp, "slp"},
};

bool known_target(std::string_view t) {
    return t == "rle" || t == "lz77" || t == "lz78" || t == "repair" || t == "bisection" || t == "slp";
}

std::string edge_name(Format from, std::string_view target) {
    return std::string(to_string(from)) + "->" + std::string(target);
}

} // namespace

std::vector<ConversionEdge> conversion_route(Format from, std::string_view target) {
    if (!known_target(target)) throw Error(ErrorCode::parse_error, "unknown target '" + std::string(target) + "'");
    if (target == to_string(from)) return {};
    // Breadth-first over formats; the route ends with an edge tagged `target`.
    std::map<Format, std::vector<ConversionEdge>> path{{from, {}}};
    std::deque<Format> queue{from};
    while (!queue.empty()) {
        const Format f = queue.front();
        queue.pop_front();
        for (const auto& e : kEdges) {
            if (e.from != f) continue;
            if (e.tag == target) {
                auto route = path[f];
                route.push_back(e);
                return route;
            }
        }
        for (const auto& e : kEdges) {
            if (e.from != f || path.contains(e.to)) continue;
            path[e.to] = path[f];
            path[e.to].push_back(e);
            queue.push_back(e.to);
        }
    }
    throw Error(ErrorCode::unreachable_conversion, "no conversion edge " + edge_name(from, target) +
                                                       (from == Format::lz77 || from == Format::lz78
                                                            ? " (LZ sources need --via-expand)"
                                                            : ""));
}

namespace {

CompressedContainer apply(const CompressedContainer& c, const ConversionEdge& e, bool self_ref) {
    const std::uint32_t sigma = c.alphabet_size;
    if (c.format == Format::rle) {
        const auto& rle = std::get<RleString>(c.payload);
        if (e.tag == "lz77") return make_container(rle_to_lz77(rle, self_ref), sigma);
        if (e.tag == "lz78") return make_container(rle_to_lz78(rle, sigma));
        if (e.tag == "repair") return make_container(rle_to_repair(rle), sigma);
        if (e.tag == "bisection") return make_container(rle_to_bisection(rle), sigma);
    } else if (c.format == Format::slp) {
        const auto& slp = std::get<Slp>(c.payload);
        if (e.tag == "rle") return make_container(slp_to_rle(slp), sigma);
        if (e.tag == "lz77") return make_container(slp_to_lz77(slp, self_ref), sigma);
        if (e.tag == "lz78") return make_container(slp_to_lz78(slp, sigma));
        if (e.tag == "bisection") return make_container(slp_to_bisection(slp), sigma);
    } else if (c.format == Format::grammar && e.tag == "slp") {
        return make_container(grammar_to_slp(std::get<AdmissibleGrammar>(c.payload)), sigma);
    }
    throw Error(ErrorCode::internal, "route step " + edge_name(c.format, e.tag) + " has no implementation");
}

Slp text_to_slp(const Text& text) {
    if (text.empty()) throw Error(ErrorCode::empty_input, "an SLP needs a nonempty text");
    return rle_to_slp(rle_encode(text));
}

} // namespace

CompressedContainer convert(const CompressedContainer& c, std::string_view target, const ConvertOptions& options) {
    require_valid(c);
    const bool lz_source = c.format == Format::lz77 || c.format == Format::lz78;
    if (lz_source && target != to_string(c.format)) {
        if (!options.via_expand) {
            // Still reports the unknown-target and missing-edge errors.
            (void)conversion_route(c.format, target);
        }
        if (!known_target(target)) throw Error(ErrorCode::parse_error, "unknown target '" + std::string(target) + "'");
        const Text text = expand(c, options.budget);
        if (target == "slp") return make_container(text_to_slp(text), c.alphabet_size);
        return encode_text(text, target, options.self_ref, c.alphabet_size);
    }
    CompressedContainer cur = c;
    for (const auto& e : conversion_route(c.format, target)) cur = apply(cur, e, options.self_ref);
    return cur;
}

Slp to_slp(const CompressedContainer& c, Length budget) {
    switch (c.format) {
    case Format::slp: return std::get<Slp>(c.payload);
    case Format::grammar: return grammar_to_slp(std::get<AdmissibleGrammar>(c.payload));
    case Format::rle: return rle_to_slp(std::get<RleString>(c.payload));
    default: return text_to_slp(expand(c, budget));
    }
}

VerifyResult verify(const CompressedContainer& a, const CompressedContainer& b, Length budget) {
    require_valid(a);
    require_valid(b);
    if (a.original_length == 0 || b.original_length == 0) {
        if (a.original_length == b.original_length) return {true, std::nullopt};
        return {false, 1};
    }
    const Slp sa = to_slp(a, budget);
    const Slp sb = to_slp(b, budget);
    if (sa.length() == sb.length() && slp_equals(sa, sb)) return {true, std::nullopt};
    const SlpFingerprints fa(sa);
    const SlpFingerprints fb(sb);
    const Length shorter = std::min(sa.length(), sb.length());
    const Length common = common_prefix(fa, sa.root(), 1, fb, sb.root(), 1, shorter);
    if (common == shorter && sa.length() == sb.length()) return {false, std::nullopt};
    return {false, common + 1};
}

std::string info_report(const CompressedContainer& c) {
    std::ostringstream os;
    const std::size_t n = compressed_size(c);
    os << "format " << to_string(c.format) << '\n';
    os << "alphabet " << c.alphabet_size << '\n';
    os << "n " << n << '\n';
    os << "N " << c.original_length << '\n';
    os << "ratio " << std::fixed << std::setprecision(4)
       << (n == 0 ? 0.0 : static_cast<double>(c.original_length) / static_cast<double>(n)) << '\n';
    if (const auto* lz = std::get_if<Lz77Factorization>(&c.payload)) {
        std::size_t literals = 0;
        for (const auto& f : lz->factors) literals += std::holds_alternative<Literal>(f) ? 1 : 0;
        os << "self_ref " << (lz->self_referential ? "yes" : "no") << '\n';
        os << "literals " << literals << '\n';
        os << "references " << lz->factors.size() - literals << '\n';
    } else if (const auto* g = std::get_if<AdmissibleGrammar>(&c.payload)) {
        os << "rules " << g->rules.size() << '\n';
        os << "start_length " << g->rules.back().size() << '\n';
    } else if (const auto* s = std::get_if<Slp>(&c.payload)) {
        os << "height " << s->height() << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Command line

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, "cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size()))) {
        throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
    }
}

Text bytes_to_text(const std::string& bytes, const std::optional<std::string>& alphabet) {
    Text t;
    t.reserve(bytes.size());
    for (unsigned char b : bytes) {
        if (!alphabet) {
            t.push_back(b);
            continue;
        }
        const auto at = alphabet->find(static_cast<char>(b));
        if (at == std::string::npos) {
            throw Error(ErrorCode::symbol_out_of_range, "byte " + std::to_string(b) + " is not in the alphabet");
        }
        t.push_back(static_cast<Symbol>(at));
    }
    return t;
}

std::string text_to_bytes(const Text& text, const std::optional<std::string>& alphabet) {
    std::string out;
    out.reserve(text.size());
    for (Symbol s : text) {
        const std::size_t limit = alphabet ? alphabet->size() : 256;
        if (s >= limit) throw Error(ErrorCode::symbol_out_of_range, "symbol " + std::to_string(s) + " has no byte");
        out.push_back(alphabet ? (*alphabet)[s] : static_cast<char>(s));
    }
    return out;
}

std::uint32_t alphabet_size(const std::optional<std::string>& alphabet) {
    return alphabet ? static_cast<std::uint32_t>(alphabet->size()) : 256;
}

CompressedContainer load(const std::string& path) {
    CompressedContainer c = parse_container(read_file(path));
    require_valid(c);
    return c;
}

ExitCode exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::unreachable_conversion: return ExitCode::unreachable;
    case ErrorCode::budget_exceeded: return ExitCode::budget;
    default: return ExitCode::invalid;
    }
}

int run(const CliConfig& cfg, std::ostream& out) {
    if (cfg.command == "encode") {
        const Text text = bytes_to_text(read_file(cfg.inputs[0]), cfg.alphabet);
        write_file(cfg.output, serialize(encode_text(text, cfg.format_tag, cfg.self_ref, alphabet_size(cfg.alphabet))));
    } else if (cfg.command == "decode") {
        write_file(cfg.output, text_to_bytes(expand(load(cfg.inputs[0]), cfg.budget), cfg.alphabet));
    } else if (cfg.command == "convert") {
        const ConvertOptions options{cfg.self_ref, cfg.via_expand, cfg.budget};
        write_file(cfg.output, serialize(convert(load(cfg.inputs[0]), cfg.format_tag, options)));
    } else if (cfg.command == "verify") {
        const VerifyResult r = verify(load(cfg.inputs[0]), load(cfg.inputs[1]), cfg.budget);
        if (r.equal) {
            out << "equal\n";
        } else {
            out << "differ " << (r.position ? std::to_string(*r.position) : std::string("unknown")) << '\n';
            return static_cast<int>(ExitCode::differ);
        }
    } else if (cfg.command == "ncd") {
        const Text x = bytes_to_text(read_file(cfg.inputs[0]), cfg.alphabet);
        const Text y = bytes_to_text(read_file(cfg.inputs[1]), cfg.alphabet);
        Text xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        const std::uint32_t sigma = alphabet_size(cfg.alphabet);
        const Length cx = compressed_size(encode_text(x, cfg.format_tag, cfg.self_ref, sigma));
        const Length cy = compressed_size(encode_text(y, cfg.format_tag, cfg.self_ref, sigma));
        const Length cxy = compressed_size(encode_text(xy, cfg.format_tag, cfg.self_ref, sigma));
        out << "ncd " << std::fixed << std::setprecision(6) << ncd(cxy, cx, cy) << '\n';
        out << "sizes " << cxy << ' ' << cx << ' ' << cy << '\n';
    } else if (cfg.command == "info") {
        out << info_report(load(cfg.inputs[0]));
    }
    return static_cast<int>(ExitCode::ok);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    if (const char* env = std::getenv("CRX_MAX_OUTPUT")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: CRX_MAX_OUTPUT must be a byte count\n";
            return static_cast<int>(ExitCode::invalid);
        }
    }

    CLI::App app{"Convert between compressed string representations", "crx"};
    app.require_subcommand(1);
    const std::vector<std::string> codecs{"rle", "lz77", "lz78", "repair", "bisection"};
    const std::vector<std::string> targets{"rle", "lz77", "lz78", "repair", "bisection", "slp"};
    std::string alphabet;
    std::string first_input;
    std::string second_input;

    auto* encode = app.add_subcommand("encode", "Compress a raw file with a reference codec");
    encode->add_option("--codec", cfg.format_tag, "rle, lz77, lz78, repair or bisection")
        ->required()
        ->check(CLI::IsMember(codecs));
    encode->add_flag("--self-ref", cfg.self_ref, "Self-referential LZ77");
    encode->add_option("--alphabet", alphabet, "Bytes of the alphabet, in symbol order");

    auto* decode = app.add_subcommand("decode", "Expand a container to a raw file");
    decode->add_option("--max-output", cfg.budget, "Largest output accepted, in bytes");
    decode->add_option("--alphabet", alphabet, "Bytes of the alphabet, in symbol order");

    auto* convert_cmd = app.add_subcommand("convert", "Convert a container to another representation");
    convert_cmd->add_option("--to", cfg.format_tag, "rle, lz77, lz78, repair, bisection or slp")
        ->required()
        ->check(CLI::IsMember(targets));
    convert_cmd->add_flag("--self-ref", cfg.self_ref, "Self-referential LZ77");
    convert_cmd->add_flag("--via-expand", cfg.via_expand, "Allow LZ sources by expanding them first");

    for (auto* sub : {encode, decode, convert_cmd}) {
        sub->add_option("IN", first_input, "Input file")->required();
        sub->add_option("OUT", cfg.output, "Output file")->required();
    }

    auto* verify_cmd = app.add_subcommand("verify", "Check whether two containers hold the same string");
    verify_cmd->add_option("A", first_input, "First container")->required();
    verify_cmd->add_option("B", second_input, "Second container")->required();

    auto* ncd_cmd = app.add_subcommand("ncd", "Normalized compression distance of two raw files");
    ncd_cmd->add_option("--codec", cfg.format_tag, "rle, lz77, lz78, repair or bisection")
        ->required()
        ->check(CLI::IsMember(codecs));
    ncd_cmd->add_flag("--self-ref", cfg.self_ref, "Self-referential LZ77");
    ncd_cmd->add_option("--alphabet", alphabet, "Bytes of the alphabet, in symbol order");
    ncd_cmd->add_option("X", first_input, "First file")->required();
    ncd_cmd->add_option("Y", second_input, "Second file")->required();

    auto* info_cmd = app.add_subcommand("info", "Describe a container");
    info_cmd->add_option("IN", first_input, "Container")->required();

    std::vector<const char*> argv{"crx"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::invalid);
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.inputs.push_back(first_input);
    if (!second_input.empty()) cfg.inputs.push_back(second_input);
    if (!alphabet.empty()) cfg.alphabet = alphabet;

    try {
        return run(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(exit_code_for(e.code()));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid);
    }
}

} // namespace crx
