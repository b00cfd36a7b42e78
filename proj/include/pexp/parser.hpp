#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"
#include "pexp/state.hpp"

namespace pexp {

/// A parsed input file: variable domains, the specification pair and the
/// program itself.
struct ProgramFile {
  StateSpace space;
  Mode mode = Mode::Partial;
  ExpPtr pre;
  ExpPtr post;
  Prog prog;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &message, size_t line, size_t col);
  size_t line;
  size_t col;
};

/// Parses a full input file (domains, spec, program sections).
[[nodiscard]] ProgramFile parse_program_file(std::string_view text);

/// Parses a bare instruction sequence, e.g. "x := 1; skip".
[[nodiscard]] Prog parse_program(std::string_view text);

[[nodiscard]] ExpPtr parse_expectation(std::string_view text);
[[nodiscard]] ArithPtr parse_arith(std::string_view text);
[[nodiscard]] BoolPtr parse_bool(std::string_view text);

} // namespace pexp
