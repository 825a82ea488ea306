#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crx/container.hpp"

namespace crx {

/// Parsed command line of the `crx` tool.
struct CliConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;
    /// Codec for encode/ncd, target tag for convert.
    std::string format_tag;
    bool self_ref = false;
    bool via_expand = false;
    Length budget = kDefaultExpansionLimit;
    /// Explicit byte -> symbol table; bytes map to themselves when absent.
    std::optional<std::string> alphabet;
};

/// Exit codes of the tool.
enum class ExitCode : int {
    ok = 0,
    invalid = 1,
    unreachable = 2,
    budget = 3,
    /// verify found two different strings.
    differ = 4,
};

/// Codec tags: rle, lz77, lz78, repair, bisection. Grammar codecs throw
/// Error(empty_input) on empty text.
CompressedContainer encode_text(const Text& text, std::string_view codec, bool self_ref, std::uint32_t alphabet_size);

/// One conversion step, e.g. "slp->rle" or "rle->repair".
struct ConversionEdge {
    Format from;
    Format to;
    std::string_view tag;
};

/// Shortest chain of implemented conversions from `from` whose last step
/// produces `target` (rle, lz77, lz78, repair, bisection, slp). Empty when the
/// source already has the target format. Throws Error(unreachable_conversion)
/// naming the missing edge.
std::vector<ConversionEdge> conversion_route(Format from, std::string_view target);

struct ConvertOptions {
    bool self_ref = false;
    bool via_expand = false;
    Length budget = kDefaultExpansionLimit;
};

/// Converts along conversion_route; LZ sources are decoded and re-encoded
/// only with via_expand.
CompressedContainer convert(const CompressedContainer& c, std::string_view target, const ConvertOptions& options);

/// SLP for any container; RLE and grammars are converted directly, LZ
/// payloads are expanded within `budget` first.
Slp to_slp(const CompressedContainer& c, Length budget);

struct VerifyResult {
    bool equal = false;
    /// First differing position when known.
    std::optional<Length> position;
};

VerifyResult verify(const CompressedContainer& a, const CompressedContainer& b, Length budget);

/// `<field> <value>` lines: format, alphabet, n, N, ratio and per-format stats.
std::string info_report(const CompressedContainer& c);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace crx
