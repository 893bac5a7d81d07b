#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ipls/raf.hpp"

namespace ipls {

// Expression tree over constants, parameters and {+, -, *, /, ^uint}.
struct ParamExpr {
    enum class Kind { Const, Param, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Const;
    double value = 0.0;  // Const
    int index = 0;       // Param, 1-based
    int power = 0;       // Pow exponent
    std::shared_ptr<const ParamExpr> a, b;
};

using ExprPtr = std::shared_ptr<const ParamExpr>;

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ['-'] atom ['^' uint]
//   atom   := number | ident | '(' expr ')'
ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& param_names);

RAF eval_raf(const ParamExpr& e, const std::vector<RAF>& params);
double eval_point(const ParamExpr& e, const Vec& p);

struct AffinePart {
    bool affine = false;
    double c = 0.0;
    Vec lin;
};

// Structural degree analysis; exact coefficient extraction for entries of
// total degree at most one in the parameters.
AffinePart extract_affine(const ParamExpr& e, int K);

ExprPtr make_const(double v);
ExprPtr make_param(int index);
ExprPtr make_neg(ExprPtr a);

}  // namespace ipls
