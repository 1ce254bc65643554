#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dsg/knots.hpp"

namespace dsg {

/// Input rejection with a stable diagnostic code and a byte offset into the
/// source text. Codes: E_PARSE, E_POWER_RANGE, E_2B_P_EVEN, E_2B_P_RANGE,
/// E_2B_Q_RANGE, E_2B_NOT_REDUCED, E_SEIFERT_SHAPE, E_SEIFERT_UNIMODULAR.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string code, const std::string& message, size_t position)
        : std::runtime_error(message), code_(std::move(code)), position_(position) {}

    const std::string& code() const { return code_; }
    size_t position() const { return position_; }

private:
    std::string code_;
    size_t position_;
};

/// Grammar (whitespace-insensitive):
///   knot := term ("#" term)* ["ribbon"] | "unknot"
///   term := "2b(" INT "/" INT ")" ("^" INT)? | "seifert(" rows ")" ("ribbon")?
///   rows := "[" row ("," row)* "]" ;  row := "[" INT ("," INT)* "]"
/// "2b(9/4)^110" expands to 110 summands; a "ribbon" token asserts the knot
/// is ribbon (never verified).
KnotSpec parse_knot(std::string_view text);

/// Canonical text form; parse_knot(print_knot(k)) reproduces k. Runs of equal
/// two-bridge summands print with "^".
std::string print_knot(const KnotSpec& k);

}  // namespace dsg
