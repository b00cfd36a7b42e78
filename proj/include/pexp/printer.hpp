#pragma once

#include <string>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"

namespace pexp {

[[nodiscard]] std::string to_string(const ArithPtr &e);
[[nodiscard]] std::string to_string(const BoolPtr &e);
[[nodiscard]] std::string to_string(const ExpPtr &e);

/// Single-line rendering of one instruction (nested programs inline).
[[nodiscard]] std::string to_string(const Inst &inst);

/// Multi-line rendering: one top-level instruction per line, nested blocks
/// indented.  Parsing the result yields the same program back.
[[nodiscard]] std::string pretty_print(const Prog &prog, int indent = 0);

} // namespace pexp
