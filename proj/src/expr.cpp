#include "psep/expr.hpp"

#include "psep/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace psep {

namespace {

ExprPtr make(Expr e) {
    return std::make_shared<const Expr>(std::move(e));
}

bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Constant; }

bool is_const_value(const ExprPtr& e, long long v) {
    return is_const(e) && e->value == Rational(v);
}

// Folding constant powers with huge exponents would build needlessly large
// bigints; past this bound the Pow node is kept symbolic.
constexpr long long kConstPowFoldLimit = 1024;

} // namespace

ExprPtr constant(Rational v) {
    Expr e{ExprKind::Constant, std::move(v), 0, 0, nullptr, nullptr};
    return make(std::move(e));
}

ExprPtr variable(int index) {
    if (index < 1)
        throw ValidationError("variable index must be >= 1, got " + std::to_string(index));
    Expr e{ExprKind::Variable, Rational(), index, 0, nullptr, nullptr};
    return make(std::move(e));
}

ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b))
        return constant(a->value + b->value);
    if (is_const_value(a, 0))
        return b;
    if (is_const_value(b, 0))
        return a;
    return make(Expr{ExprKind::Add, Rational(), 0, 0, std::move(a), std::move(b)});
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b))
        return constant(a->value - b->value);
    if (is_const_value(b, 0))
        return a;
    if (is_const_value(a, 0))
        return neg(std::move(b));
    return make(Expr{ExprKind::Sub, Rational(), 0, 0, std::move(a), std::move(b)});
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b))
        return constant(a->value * b->value);
    if (is_const_value(a, 0) || is_const_value(b, 0))
        return constant(Rational(0));
    if (is_const_value(a, 1))
        return b;
    if (is_const_value(b, 1))
        return a;
    return make(Expr{ExprKind::Mul, Rational(), 0, 0, std::move(a), std::move(b)});
}

ExprPtr div(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b) && !b->value.is_zero())
        return constant(a->value / b->value);
    if (is_const_value(a, 0) && !(is_const(b) && b->value.is_zero()))
        return constant(Rational(0));
    if (is_const_value(b, 1))
        return a;
    return make(Expr{ExprKind::Div, Rational(), 0, 0, std::move(a), std::move(b)});
}

ExprPtr pow(ExprPtr base, long long exponent) {
    if (exponent == 0)
        return constant(Rational(1));
    if (exponent == 1)
        return base;
    if (is_const(base) && std::llabs(exponent) <= kConstPowFoldLimit &&
        !(base->value.is_zero() && exponent < 0))
        return constant(base->value.pow(exponent));
    Expr e{ExprKind::Pow, Rational(), 0, exponent, std::move(base), nullptr};
    return make(std::move(e));
}

ExprPtr neg(ExprPtr u) {
    if (is_const(u))
        return constant(-u->value);
    if (u->kind == ExprKind::Neg)
        return u->lhs;
    return make(Expr{ExprKind::Neg, Rational(), 0, 0, std::move(u), nullptr});
}

ExprPtr ln(ExprPtr u) {
    return make(Expr{ExprKind::Ln, Rational(), 0, 0, std::move(u), nullptr});
}

ExprPtr exp(ExprPtr u) {
    return make(Expr{ExprKind::Exp, Rational(), 0, 0, std::move(u), nullptr});
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view src, int dimension) : src_(src), n_(dimension) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int n_;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept('+'))
                e = add(std::move(e), parse_term());
            else if (accept('-'))
                e = sub(std::move(e), parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = mul(std::move(e), parse_unary());
            else if (accept('/'))
                e = div(std::move(e), parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (accept('-'))
            return neg(parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '^') {
            std::size_t caret = pos_;
            ++pos_;
            ExprPtr e = parse_unary(); // right-associative, tighter than * /
            if (e->kind != ExprKind::Constant || !e->value.is_integer())
                throw ParseError("exponent must be a constant integer", caret);
            BigInt k = e->value.numerator();
            if (k > 1000000 || k < -1000000)
                throw ParseError("exponent out of range", caret);
            return pow(std::move(base), k.convert_to<long long>());
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        BigInt int_part(std::string(src_.substr(start, pos_ - start)));
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            std::size_t frac_start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (pos_ == frac_start)
                throw ParseError("expected digits after decimal point", pos_);
            std::string frac(src_.substr(frac_start, pos_ - frac_start));
            BigInt den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            return constant(Rational(int_part * den + BigInt(frac), den));
        }
        return constant(Rational(int_part));
    }

    ExprPtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "ln" || name == "exp") {
            if (!accept('('))
                throw ParseError(std::string(name) + " requires parentheses", pos_);
            ExprPtr arg = parse_expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return name == "ln" ? ln(std::move(arg)) : exp(std::move(arg));
        }
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    digits = false;
            if (digits) {
                long idx = std::strtol(std::string(name.substr(1)).c_str(), nullptr, 10);
                if (idx < 1 || idx > n_)
                    throw ParseError("variable " + std::string(name) + " out of range for dimension " +
                                     std::to_string(n_), start);
                return variable(static_cast<int>(idx));
            }
        }
        throw ParseError("unknown identifier \"" + std::string(name) + "\"", start);
    }
};

} // namespace

ExprPtr parse(std::string_view source, int dimension) {
    return Parser(source, dimension).run();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double pow_int(double v, long long k) {
    bool invert = k < 0;
    unsigned long long e = invert ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    double acc = 1.0, base = v;
    while (e > 0) {
        if (e & 1ull)
            acc *= base;
        base *= base;
        e >>= 1;
    }
    if (invert) {
        if (acc == 0.0)
            throw DomainError("zero raised to a negative power");
        return 1.0 / acc;
    }
    return acc;
}

} // namespace

double evaluate(const Expr& e, std::span<const double> x) {
    switch (e.kind) {
    case ExprKind::Constant:
        return e.value.to_double();
    case ExprKind::Variable:
        if (e.index > static_cast<int>(x.size()))
            throw DomainError("point dimension " + std::to_string(x.size()) +
                              " too small for variable x" + std::to_string(e.index));
        return x[e.index - 1];
    case ExprKind::Add:
        return evaluate(*e.lhs, x) + evaluate(*e.rhs, x);
    case ExprKind::Sub:
        return evaluate(*e.lhs, x) - evaluate(*e.rhs, x);
    case ExprKind::Mul:
        return evaluate(*e.lhs, x) * evaluate(*e.rhs, x);
    case ExprKind::Div: {
        double num = evaluate(*e.lhs, x);
        double den = evaluate(*e.rhs, x);
        if (den == 0.0)
            throw DomainError("division by zero");
        return num / den;
    }
    case ExprKind::Pow:
        return pow_int(evaluate(*e.lhs, x), e.exponent);
    case ExprKind::Neg:
        return -evaluate(*e.lhs, x);
    case ExprKind::Ln: {
        double v = evaluate(*e.lhs, x);
        if (v <= 0.0)
            throw DomainError("ln of nonpositive value " + std::to_string(v));
        return std::log(v);
    }
    case ExprKind::Exp:
        return std::exp(evaluate(*e.lhs, x));
    }
    throw std::logic_error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

ExprPtr differentiate(const ExprPtr& e, int index) {
    switch (e->kind) {
    case ExprKind::Constant:
        return constant(Rational(0));
    case ExprKind::Variable:
        return constant(Rational(e->index == index ? 1 : 0));
    case ExprKind::Add:
        return add(differentiate(e->lhs, index), differentiate(e->rhs, index));
    case ExprKind::Sub:
        return sub(differentiate(e->lhs, index), differentiate(e->rhs, index));
    case ExprKind::Mul:
        return add(mul(differentiate(e->lhs, index), e->rhs),
                   mul(e->lhs, differentiate(e->rhs, index)));
    case ExprKind::Div:
        return div(sub(mul(differentiate(e->lhs, index), e->rhs),
                       mul(e->lhs, differentiate(e->rhs, index))),
                   pow(e->rhs, 2));
    case ExprKind::Pow:
        return mul(mul(constant(Rational(e->exponent)), pow(e->lhs, e->exponent - 1)),
                   differentiate(e->lhs, index));
    case ExprKind::Neg:
        return neg(differentiate(e->lhs, index));
    case ExprKind::Ln:
        return div(differentiate(e->lhs, index), e->lhs);
    case ExprKind::Exp:
        return mul(exp(e->lhs), differentiate(e->lhs, index));
    }
    throw std::logic_error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence for printing: + - are 1, * / are 2, unary minus 3, ^ 4,
// atoms 5. Constants take the precedence of their textual spelling so that
// reparsing the output reproduces the tree (e.g. "1/2" parses as a division
// that folds back into the same constant).
int print_prec(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
        return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
        return 2;
    case ExprKind::Neg:
        return 3;
    case ExprKind::Pow:
        return 4;
    case ExprKind::Constant:
        if (!e.value.is_integer())
            return 2; // prints as p/q
        if (e.value.sign() < 0)
            return 3; // prints with a leading minus
        return 5;
    default:
        return 5;
    }
}

void render(const Expr& e, std::string& out) {
    auto child = [&out](const Expr& c, bool parens) {
        if (parens)
            out += '(';
        render(c, out);
        if (parens)
            out += ')';
    };
    int prec = print_prec(e);
    switch (e.kind) {
    case ExprKind::Constant:
        out += e.value.str();
        return;
    case ExprKind::Variable:
        out += "x" + std::to_string(e.index);
        return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
        child(*e.lhs, print_prec(*e.lhs) < prec);
        out += e.kind == ExprKind::Add ? " + "
             : e.kind == ExprKind::Sub ? " - "
             : e.kind == ExprKind::Mul ? "*" : "/";
        child(*e.rhs, print_prec(*e.rhs) <= prec);
        return;
    case ExprKind::Pow:
        child(*e.lhs, print_prec(*e.lhs) < 5);
        out += "^" + std::to_string(e.exponent);
        return;
    case ExprKind::Neg:
        out += '-';
        child(*e.lhs, print_prec(*e.lhs) < prec);
        return;
    case ExprKind::Ln:
    case ExprKind::Exp:
        out += e.kind == ExprKind::Ln ? "ln(" : "exp(";
        render(*e.lhs, out);
        out += ')';
        return;
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    render(e, out);
    return out;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case ExprKind::Constant:
        return a.value == b.value;
    case ExprKind::Variable:
        return a.index == b.index;
    case ExprKind::Pow:
        return a.exponent == b.exponent && equal(*a.lhs, *b.lhs);
    case ExprKind::Neg:
    case ExprKind::Ln:
    case ExprKind::Exp:
        return equal(*a.lhs, *b.lhs);
    default:
        return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

int max_variable_index(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Constant:
        return 0;
    case ExprKind::Variable:
        return e.index;
    case ExprKind::Pow:
    case ExprKind::Neg:
    case ExprKind::Ln:
    case ExprKind::Exp:
        return max_variable_index(*e.lhs);
    default:
        return std::max(max_variable_index(*e.lhs), max_variable_index(*e.rhs));
    }
}

} // namespace psep
