#pragma once

#include "pexp/ast.hpp"

namespace pexp {

/// Decides the syntactic is-portion-of relation: `a` is obtainable from `b`
/// by removing contiguous instruction subsequences, replacing whole
/// subprograms by skip, and rewriting branches/bodies to portions of
/// themselves (guards, probabilities and loop annotations unchanged).
[[nodiscard]] bool is_portion_of(const Prog &a, const Prog &b);

} // namespace pexp
