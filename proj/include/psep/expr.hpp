#ifndef PSEP_EXPR_HPP
#define PSEP_EXPR_HPP

#include "psep/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace psep {

enum class ExprKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Ln, Exp };

/// Immutable expression tree. Constants are exact rationals (decimal literals
/// are converted exactly); Pow carries an integer exponent.
struct Expr {
    ExprKind kind;
    Rational value;          // Constant
    int index = 0;           // Variable, 1-based
    long long exponent = 0;  // Pow
    std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Smart constructors. Binary/unary forms apply conservative exact folding:
// two-constant operations collapse (unless they would divide by zero),
// 0*u -> 0, 1*u -> u, u+0 -> u, 0-u -> -u, u/1 -> u, u^0 -> 1, u^1 -> u,
// -(-u) -> u. No deeper canonicalization.
ExprPtr constant(Rational v);
ExprPtr variable(int index);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, long long exponent);
ExprPtr neg(ExprPtr u);
ExprPtr ln(ExprPtr u);
ExprPtr exp(ExprPtr u);

/// Grammar: + - * / with standard precedence and left associativity, ^ with
/// constant integer exponent (right-associative, binds tighter than unary
/// minus), functions ln and exp, variables x1..xn, integer and decimal
/// literals. Throws ParseError with a character offset.
ExprPtr parse(std::string_view source, int dimension);

/// IEEE double evaluation. Throws DomainError for ln of a nonpositive value
/// or division by zero; variables index into x.
double evaluate(const Expr& e, std::span<const double> x);

/// Exact symbolic derivative with respect to x_index.
ExprPtr differentiate(const ExprPtr& e, int index);

/// Minimal-parentheses rendering; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

bool equal(const Expr& a, const Expr& b);

/// Largest variable index referenced (0 for constant expressions).
int max_variable_index(const Expr& e);

} // namespace psep

#endif
