#pragma once

#include <string_view>

#include "mvx/expr.hpp"

namespace mvx {

// Parses the scalar field grammar: +, -, *, /, integer ^, unary minus,
// sin/cos/exp/sqrt/abs, real literals, coordinates x1..xn. Precedence
// ^ > unary- > * / > + -. Errors carry (line, col); `line` and `col0`
// locate the expression inside a larger document.
Expr parse_expr(std::string_view text, int dim, int line = 1, int col0 = 1);

}  // namespace mvx
