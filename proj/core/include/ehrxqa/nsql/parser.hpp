#pragma once

#include <string>

#include "ehrxqa/nsql/ast.hpp"

namespace ehrxqa::nsql {

/// Parses one statement of the dialect: standard SQL SELECT grammar extended
/// with the FUNC_VQA expression. Raises SyntaxError with line/column, or
/// ArityError when FUNC_VQA does not have exactly two arguments.
SelectPtr parse(const std::string& text);

/// Canonical text: lowercase keywords, single spaces, stable parenthesization.
/// parse(print(ast)) is structurally identical to ast.
std::string print(const SelectStmt& stmt);
std::string print(const Expr& expr);

/// Whitespace/case/quote-insensitive canonical form for logical-form
/// comparison: equal outputs iff the parse trees are structurally identical.
std::string normalize_lf(const std::string& text);

}  // namespace ehrxqa::nsql
