#ifndef PSEP_CHARTS_HPP
#define PSEP_CHARTS_HPP

#include "psep/expr.hpp"
#include "psep/rational.hpp"

#include <string>

namespace psep {

/// Open interval; endpoints may be +-infinity.
struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return x > lo && x < hi; }
    bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
    double width() const { return hi - lo; }
};

enum class ChartFamily { Constant, Power, Affine, Logistic, Exponential, Custom };

/// One chart factor phi(x): nonvanishing and C^1 on its open interval,
/// together with the fixed antiderivative F(x) = integral dx/phi and its
/// inverse. Antiderivative constants are pinned per family:
///   constant c : x/c                 on R
///   power 1    : ln x                on (0, inf)
///   power k>=2 : x^(1-k)/(1-k)       on (0, inf)
///   affine a,b : ln|a x + b| / a     on a component not containing -b/a
///   logistic   : ln(x/(1-x))         on (0, 1)
///   exp lambda : -e^(-lambda x)/lambda  on R
///   custom     : adaptive quadrature from a fixed anchor
class ChartFunction {
public:
    static ChartFunction constant(Rational c);
    static ChartFunction power(int k);
    static ChartFunction affine(Rational a, Rational b);
    static ChartFunction logistic();
    static ChartFunction exponential(Rational lambda);
    /// phi given as an expression in x1. The interval must keep phi
    /// nonvanishing; validated on a sample grid (heuristic, not a proof).
    static ChartFunction custom(const std::string& phi_source, Interval interval);

    /// Narrowed copy. The new interval must sit inside the family's
    /// admissible domain. Custom charts are revalidated and re-anchored.
    ChartFunction with_interval(Interval interval) const;

    double value(double x) const;      // phi(x); throws DomainError off-interval
    double derivative(double x) const; // dphi/dx
    double forward(double x) const;    // F(x)
    double inverse(double y) const;    // F^-1(y); throws DomainError off-range

    const Interval& interval() const { return interval_; }
    /// Image of the interval under F (custom charts report (-inf, inf) and
    /// rely on inverse() bracketing to detect unreachable targets).
    Interval forward_range() const;
    bool increasing() const { return sign_ > 0; }

    ChartFamily family() const { return family_; }
    const Rational& constant_value() const { return c_; }
    int power_exponent() const { return k_; }
    const Rational& affine_a() const { return a_; }
    const Rational& affine_b() const { return b_; }
    const Rational& exp_lambda() const { return lambda_; }
    const std::string& custom_source() const { return source_; }

    /// Human-readable antiderivative, e.g. "ln(x2)" or "x3" — used when
    /// rendering Casimirs and Darboux charts.
    std::string antiderivative_formula(int coordinate) const;

private:
    ChartFunction() = default;

    void finish_custom(); // validates grid, picks anchor and sign
    double forward_unchecked(double x) const;
    double custom_forward(double x) const;
    double custom_inverse(double y) const;

    ChartFamily family_ = ChartFamily::Constant;
    Rational c_, a_, b_, lambda_;
    int k_ = 0;
    std::string source_;
    ExprPtr phi_, phi_prime_;
    Interval interval_{0.0, 0.0};
    int sign_ = 1;        // sign of phi (hence monotonicity of F) on the interval
    double anchor_ = 0.0; // custom: F(anchor) = 0
};

} // namespace psep

#endif
