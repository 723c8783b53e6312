#pragma once

#include "lexer.hpp"
#include "ltl/query.hpp"

namespace ltl::detail {

// Parses an optional start variable followed by path steps, stopping at the
// first token that cannot continue the path.
PathExpr parse_path_steps(Lexer& lx);

}  // namespace ltl::detail
