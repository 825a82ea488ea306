#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "crx/text_model.hpp"

namespace crx {

enum class Format { rle, lz77, lz78, grammar, slp };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view tag);

using Payload = std::variant<RleString, Lz77Factorization, Lz78Factorization, AdmissibleGrammar, Slp>;

/// On-disk envelope: format tag, alphabet size, original length N and payload.
///
/// Text layout, one record per line, fields separated by one space:
///
///     CRX1 <format> <alphabet_size> <N> [selfref]
///     rle:          <sym> <exp>
///     lz77:         L <sym> | R <src> <len>
///     lz78:         <id>
///     grammar/slp:  <var> -> <item>+      items are t<code> or v<index>
///
/// Variables are numbered from 1 in line order and the start variable is the
/// last one. Serialization is canonical, so parse/serialize round-trips
/// byte-for-byte.
struct CompressedContainer {
    Format format = Format::rle;
    std::uint32_t alphabet_size = 0;
    Length original_length = 0;
    Payload payload;

    bool self_referential() const;
};

CompressedContainer make_container(RleString rle, std::uint32_t alphabet_size);
CompressedContainer make_container(Lz77Factorization lz, std::uint32_t alphabet_size);
CompressedContainer make_container(Lz78Factorization lz);
CompressedContainer make_container(AdmissibleGrammar g, std::uint32_t alphabet_size);
CompressedContainer make_container(Slp slp, std::uint32_t alphabet_size);

std::string serialize(const CompressedContainer& c);

/// Parses the text layout. Structural problems raise Error(parse_error); an
/// SLP with a forward reference raises Error(forward_reference_in_slp).
/// Semantic invariants are left to validate().
CompressedContainer parse_container(std::string_view text);

struct ValidationReport {
    bool ok = true;
    std::optional<ErrorCode> code;
    std::string message;
};

/// Checks every payload invariant plus the declared length, without expanding.
ValidationReport validate(const CompressedContainer& c);
/// Parse, then validate; parse failures are reported rather than thrown.
ValidationReport validate_text(std::string_view text);

/// Throws the first violation found by validate().
void require_valid(const CompressedContainer& c);

/// Payload item count: runs, factors, or total right-hand-side length for
/// grammars; rules for SLPs.
std::size_t compressed_size(const CompressedContainer& c);

/// Guarded expansion of any container payload.
Text expand(const CompressedContainer& c, Length limit = kDefaultExpansionLimit);

} // namespace crx
