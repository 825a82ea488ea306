#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crx {

/// Failure categories reported by the library. The CLI maps these onto its
/// exit codes, so the set is part of the scripting contract.
enum class ErrorCode {
    parse_error,
    adjacent_equal_runs,
    zero_exponent,
    symbol_out_of_range,
    cyclic_grammar,
    unreachable_variable,
    empty_rule,
    forward_reference_in_slp,
    dangling_reference,
    length_mismatch,
    length_overflow,
    budget_exceeded,
    out_of_range,
    empty_input,
    unreachable_conversion,
    zero_size,
    internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace crx
