#include "psep/charts.hpp"

#include "psep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace psep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void off_interval(double x, const Interval& iv) {
    throw DomainError("argument " + std::to_string(x) + " outside chart interval (" +
                      std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + ")");
}

// Adaptive Simpson with an absolute tolerance.
struct Simpson {
    const std::function<double(double)>& g;
    int max_depth = 60;

    double whole(double a, double b, double tol) const {
        double m = 0.5 * (a + b);
        double fa = g(a), fm = g(m), fb = g(b);
        double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, s, tol, max_depth);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double s,
                   double tol, int depth) const {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = g(lm), frm = g(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double err = left + right - s;
        if (std::abs(err) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b)))
            return left + right + err / 15.0;
        if (depth <= 0)
            throw std::runtime_error("chart quadrature failed to meet tolerance");
        double tol2 = std::max(0.5 * tol, 1e-15); // floor so wide intervals stay feasible
        return recurse(a, m, fa, flm, fm, left, tol2, depth - 1) +
               recurse(m, b, fm, frm, fb, right, tol2, depth - 1);
    }
};

std::string coordinate_name(int coordinate) {
    return "x" + std::to_string(coordinate);
}

// c.str() wrapped in parentheses when it would not read as an atom.
std::string atom(const Rational& c) {
    if (c.sign() < 0 || !c.is_integer())
        return "(" + c.str() + ")";
    return c.str();
}

} // namespace

ChartFunction ChartFunction::constant(Rational c) {
    if (c.is_zero())
        throw ValidationError("constant chart must be nonzero");
    ChartFunction f;
    f.family_ = ChartFamily::Constant;
    f.sign_ = c.sign();
    f.c_ = std::move(c);
    f.interval_ = {-kInf, kInf};
    return f;
}

ChartFunction ChartFunction::power(int k) {
    if (k < 1)
        throw ValidationError("power chart exponent must be a positive integer, got " +
                              std::to_string(k));
    ChartFunction f;
    f.family_ = ChartFamily::Power;
    f.k_ = k;
    f.interval_ = {0.0, kInf};
    f.sign_ = 1;
    return f;
}

ChartFunction ChartFunction::affine(Rational a, Rational b) {
    if (a.is_zero())
        throw ValidationError("affine chart requires a != 0 (use a constant chart instead)");
    ChartFunction f;
    f.family_ = ChartFamily::Affine;
    f.a_ = std::move(a);
    f.b_ = std::move(b);
    double root = (-f.b_ / f.a_).to_double();
    // Default component: the one where phi > 0.
    if (f.a_.sign() > 0)
        f.interval_ = {root, kInf};
    else
        f.interval_ = {-kInf, root};
    f.sign_ = 1;
    return f;
}

ChartFunction ChartFunction::logistic() {
    ChartFunction f;
    f.family_ = ChartFamily::Logistic;
    f.interval_ = {0.0, 1.0};
    f.sign_ = 1;
    return f;
}

ChartFunction ChartFunction::exponential(Rational lambda) {
    if (lambda.is_zero())
        throw ValidationError("exponential chart requires lambda != 0");
    ChartFunction f;
    f.family_ = ChartFamily::Exponential;
    f.lambda_ = std::move(lambda);
    f.interval_ = {-kInf, kInf};
    f.sign_ = 1;
    return f;
}

ChartFunction ChartFunction::custom(const std::string& phi_source, Interval interval) {
    ChartFunction f;
    f.family_ = ChartFamily::Custom;
    f.source_ = phi_source;
    f.phi_ = parse(phi_source, 1);
    f.phi_prime_ = differentiate(f.phi_, 1);
    f.interval_ = interval;
    f.finish_custom();
    return f;
}

ChartFunction ChartFunction::with_interval(Interval interval) const {
    if (!(interval.lo < interval.hi))
        throw ValidationError("chart interval must satisfy lo < hi");
    ChartFunction f = *this;
    switch (family_) {
    case ChartFamily::Constant:
    case ChartFamily::Exponential:
        break; // any open interval in R
    case ChartFamily::Power:
    case ChartFamily::Logistic:
        if (!interval_.contains(interval))
            throw ValidationError("interval not contained in the chart's admissible domain");
        break;
    case ChartFamily::Affine: {
        double root = (-b_ / a_).to_double();
        if (interval.lo < root && interval.hi > root)
            throw ValidationError("affine chart interval must not contain the root of a*x + b");
        double probe;
        if (std::isfinite(interval.lo) && std::isfinite(interval.hi))
            probe = 0.5 * (interval.lo + interval.hi);
        else if (std::isfinite(interval.lo))
            probe = interval.lo + 1.0;
        else
            probe = interval.hi - 1.0;
        f.sign_ = a_.to_double() * probe + b_.to_double() > 0.0 ? 1 : -1;
        break;
    }
    case ChartFamily::Custom:
        f.interval_ = interval;
        f.finish_custom();
        return f;
    }
    f.interval_ = interval;
    return f;
}

void ChartFunction::finish_custom() {
    const Interval& iv = interval_;
    if (!(iv.lo < iv.hi))
        throw ValidationError("custom chart interval must satisfy lo < hi");
    if (std::isfinite(iv.lo) && std::isfinite(iv.hi))
        anchor_ = 0.5 * (iv.lo + iv.hi);
    else if (iv.contains(0.0))
        anchor_ = 0.0;
    else if (iv.contains(1.0))
        anchor_ = 1.0;
    else if (std::isfinite(iv.lo))
        anchor_ = iv.lo + 1.0;
    else
        anchor_ = iv.hi - 1.0;

    // Nonvanishing check: sign agreement of phi on a 1024-point grid over the
    // interval (clamped to anchor +- 50 when unbounded). Heuristic.
    double lo = std::isfinite(iv.lo) ? iv.lo : anchor_ - 50.0;
    double hi = std::isfinite(iv.hi) ? iv.hi : anchor_ + 50.0;
    const int grid = 1024;
    int sign = 0;
    for (int i = 0; i < grid; ++i) {
        double t = lo + (hi - lo) * (i + 0.5) / grid;
        double v;
        try {
            v = evaluate(*phi_, std::span<const double>(&t, 1));
            evaluate(*phi_prime_, std::span<const double>(&t, 1));
        } catch (const DomainError& e) {
            throw ValidationError("custom chart not evaluable at x=" + std::to_string(t) +
                                  ": " + e.what());
        }
        if (!std::isfinite(v) || v == 0.0)
            throw ValidationError("custom chart vanishes or is non-finite at x=" + std::to_string(t));
        int s = v > 0.0 ? 1 : -1;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            throw ValidationError("custom chart changes sign on its interval near x=" + std::to_string(t));
    }
    sign_ = sign;
}

double ChartFunction::value(double x) const {
    if (!interval_.contains(x))
        off_interval(x, interval_);
    switch (family_) {
    case ChartFamily::Constant:
        return c_.to_double();
    case ChartFamily::Power: {
        double acc = x;
        for (int i = 1; i < k_; ++i)
            acc *= x;
        return acc;
    }
    case ChartFamily::Affine:
        return a_.to_double() * x + b_.to_double();
    case ChartFamily::Logistic:
        return x * (1.0 - x);
    case ChartFamily::Exponential:
        return std::exp(lambda_.to_double() * x);
    case ChartFamily::Custom:
        return evaluate(*phi_, std::span<const double>(&x, 1));
    }
    throw std::logic_error("unreachable chart family");
}

double ChartFunction::derivative(double x) const {
    if (!interval_.contains(x))
        off_interval(x, interval_);
    switch (family_) {
    case ChartFamily::Constant:
        return 0.0;
    case ChartFamily::Power: {
        double acc = static_cast<double>(k_);
        for (int i = 1; i < k_; ++i)
            acc *= x;
        return acc;
    }
    case ChartFamily::Affine:
        return a_.to_double();
    case ChartFamily::Logistic:
        return 1.0 - 2.0 * x;
    case ChartFamily::Exponential: {
        double l = lambda_.to_double();
        return l * std::exp(l * x);
    }
    case ChartFamily::Custom:
        return evaluate(*phi_prime_, std::span<const double>(&x, 1));
    }
    throw std::logic_error("unreachable chart family");
}

double ChartFunction::forward_unchecked(double x) const {
    switch (family_) {
    case ChartFamily::Constant:
        return x / c_.to_double();
    case ChartFamily::Power:
        if (k_ == 1)
            return std::log(x);
        return std::pow(x, 1 - k_) / static_cast<double>(1 - k_);
    case ChartFamily::Affine: {
        double a = a_.to_double();
        return std::log(std::abs(a * x + b_.to_double())) / a;
    }
    case ChartFamily::Logistic:
        return std::log(x / (1.0 - x));
    case ChartFamily::Exponential: {
        double l = lambda_.to_double();
        return -std::exp(-l * x) / l;
    }
    case ChartFamily::Custom:
        return custom_forward(x);
    }
    throw std::logic_error("unreachable chart family");
}

double ChartFunction::forward(double x) const {
    if (!interval_.contains(x))
        off_interval(x, interval_);
    return forward_unchecked(x);
}

Interval ChartFunction::forward_range() const {
    if (family_ == ChartFamily::Custom)
        return {-kInf, kInf}; // not known in closed form

    // F is monotone; take its limits at the interval endpoints.
    auto limit = [this](double x, bool lower_end) -> double {
        switch (family_) {
        case ChartFamily::Constant:
            return x / c_.to_double(); // keeps the right sign for +-inf
        case ChartFamily::Power:
            if (x == 0.0)
                return -kInf;
            if (!std::isfinite(x))
                return k_ == 1 ? kInf : 0.0;
            return forward_unchecked(x);
        case ChartFamily::Affine: {
            bool toward_root = std::isfinite(x) && x == (-b_ / a_).to_double();
            if (!std::isfinite(x) || toward_root) {
                // |a x + b| -> inf away from the root, -> 0 at the root.
                bool to_zero = toward_root;
                double l = to_zero ? -kInf : kInf;
                return a_.sign() > 0 ? l : -l;
            }
            (void)lower_end;
            return forward_unchecked(x);
        }
        case ChartFamily::Logistic:
            if (x == 0.0)
                return -kInf;
            if (x == 1.0)
                return kInf;
            return forward_unchecked(x);
        case ChartFamily::Exponential: {
            double l = lambda_.to_double();
            if (!std::isfinite(x))
                return x > 0 ? (l > 0 ? 0.0 : kInf) : (l > 0 ? -kInf : 0.0);
            return forward_unchecked(x);
        }
        default:
            return 0.0;
        }
    };
    double fa = limit(interval_.lo, true);
    double fb = limit(interval_.hi, false);
    return {std::min(fa, fb), std::max(fa, fb)};
}

double ChartFunction::inverse(double y) const {
    if (family_ == ChartFamily::Custom)
        return custom_inverse(y);
    Interval range = forward_range();
    if (!range.contains(y))
        throw DomainError("value " + std::to_string(y) + " outside chart range (" +
                          std::to_string(range.lo) + ", " + std::to_string(range.hi) + ")");
    switch (family_) {
    case ChartFamily::Constant:
        return y * c_.to_double();
    case ChartFamily::Power:
        if (k_ == 1)
            return std::exp(y);
        // y = x^(1-k)/(1-k)  =>  x = ((1-k) y)^(1/(1-k))
        return std::pow(static_cast<double>(1 - k_) * y, 1.0 / static_cast<double>(1 - k_));
    case ChartFamily::Affine: {
        double a = a_.to_double();
        return (static_cast<double>(sign_) * std::exp(a * y) - b_.to_double()) / a;
    }
    case ChartFamily::Logistic:
        return 1.0 / (1.0 + std::exp(-y));
    case ChartFamily::Exponential: {
        double l = lambda_.to_double();
        return -std::log(-l * y) / l;
    }
    default:
        throw std::logic_error("unreachable chart family");
    }
}

double ChartFunction::custom_forward(double x) const {
    std::function<double(double)> g = [this](double t) {
        return 1.0 / evaluate(*phi_, std::span<const double>(&t, 1));
    };
    Simpson quad{g};
    if (x == anchor_)
        return 0.0;
    double lo = std::min(x, anchor_), hi = std::max(x, anchor_);
    double v = quad.whole(lo, hi, 1e-12);
    return x > anchor_ ? v : -v;
}

double ChartFunction::custom_inverse(double y) const {
    // F is strictly monotone (phi has constant sign); bracket, bisect, then
    // polish with Newton using F' = 1/phi.
    bool up = sign_ > 0;
    double target = up ? y : -y;
    auto g = [this, up](double x) { return up ? custom_forward(x) : -custom_forward(x); };

    double lo = anchor_, hi = anchor_;
    if (target >= 0.0) {
        double step = 1.0;
        for (int it = 0;; ++it) {
            if (it > 200)
                throw DomainError("value " + std::to_string(y) + " outside custom chart range");
            double next = std::isfinite(interval_.hi) ? hi + 0.5 * (interval_.hi - hi)
                                                      : hi + step;
            if (next <= hi || (!std::isfinite(interval_.hi) && hi > 1e12))
                throw DomainError("value " + std::to_string(y) + " outside custom chart range");
            hi = next;
            step *= 2.0;
            if (g(hi) >= target)
                break;
        }
    } else {
        double step = 1.0;
        for (int it = 0;; ++it) {
            if (it > 200)
                throw DomainError("value " + std::to_string(y) + " outside custom chart range");
            double next = std::isfinite(interval_.lo) ? lo - 0.5 * (lo - interval_.lo)
                                                      : lo - step;
            if (next >= lo || (!std::isfinite(interval_.lo) && lo < -1e12))
                throw DomainError("value " + std::to_string(y) + " outside custom chart range");
            lo = next;
            step *= 2.0;
            if (g(lo) <= target)
                break;
        }
    }

    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double fx = custom_forward(x);
        double phi = evaluate(*phi_, std::span<const double>(&x, 1));
        double next = x - (fx - y) * phi;
        if (interval_.contains(next))
            x = next;
    }
    return x;
}

std::string ChartFunction::antiderivative_formula(int coordinate) const {
    std::string xc = coordinate_name(coordinate);
    switch (family_) {
    case ChartFamily::Constant:
        if (c_ == Rational(1))
            return xc;
        return xc + "/" + atom(c_);
    case ChartFamily::Power:
        if (k_ == 1)
            return "ln(" + xc + ")";
        if (k_ == 2)
            return "-1/" + xc;
        return xc + "^(" + std::to_string(1 - k_) + ")/(" + std::to_string(1 - k_) + ")";
    case ChartFamily::Affine: {
        std::string inner = (a_ == Rational(1) ? "" : atom(a_) + "*") + xc;
        if (!b_.is_zero())
            inner += b_.sign() > 0 ? " + " + b_.str() : " - " + (-b_).str();
        std::string s = "ln|" + inner + "|";
        if (a_ != Rational(1))
            s += "/" + atom(a_);
        return s;
    }
    case ChartFamily::Logistic:
        return "ln(" + xc + "/(1-" + xc + "))";
    case ChartFamily::Exponential:
        if (lambda_ == Rational(1))
            return "-exp(-" + xc + ")";
        return "-exp(-" + atom(lambda_) + "*" + xc + ")/" + atom(lambda_);
    case ChartFamily::Custom:
        return "F(" + xc + ")";
    }
    throw std::logic_error("unreachable chart family");
}

} // namespace psep
