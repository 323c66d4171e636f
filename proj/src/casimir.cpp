#include "psep/casimir.hpp"

#include "psep/errors.hpp"

#include <cmath>
#include <utility>

namespace psep {

CasimirFunction::CasimirFunction(std::vector<Rational> coefficients,
                                 std::vector<ChartFunction> charts, DomainBox domain)
    : k_(std::move(coefficients)), charts_(std::move(charts)), domain_(std::move(domain)) {
    if (k_.size() != charts_.size() || domain_.dim() != static_cast<int>(k_.size()))
        throw ValidationError("Casimir coefficient, chart, and domain dimensions disagree");
}

void CasimirFunction::require_inside(std::span<const double> x) const {
    if (!domain_.contains(x))
        throw DomainError("point outside the structure domain");
}

double CasimirFunction::value(std::span<const double> x) const {
    require_inside(x);
    double sum = 0.0;
    for (std::size_t j = 0; j < k_.size(); ++j) {
        if (k_[j].is_zero())
            continue;
        sum += k_[j].to_double() * charts_[j].forward(x[j]);
    }
    return sum;
}

Vec CasimirFunction::gradient(std::span<const double> x) const {
    require_inside(x);
    Vec g(k_.size());
    for (std::size_t j = 0; j < k_.size(); ++j)
        g[j] = k_[j].is_zero() ? 0.0 : k_[j].to_double() / charts_[j].value(x[j]);
    return g;
}

std::string CasimirFunction::formula() const {
    std::string out;
    for (std::size_t j = 0; j < k_.size(); ++j) {
        if (k_[j].is_zero())
            continue;
        Rational k = k_[j];
        if (out.empty()) {
            out += k.str() + "*";
        } else if (k.sign() < 0) {
            out += " - " + (-k).str() + "*";
        } else {
            out += " + " + k.str() + "*";
        }
        std::string term = charts_[j].antiderivative_formula(static_cast<int>(j) + 1);
        out += term.front() == '-' ? "(" + term + ")" : term;
    }
    return out.empty() ? "0" : out;
}

CasimirSet casimir_set(const SeparableStructure& s) {
    KernelBasis basis = kernel_basis(s.coefficients());
    CasimirSet set;
    set.items.reserve(basis.vectors.size());
    for (auto& k : basis.vectors)
        set.items.emplace_back(std::move(k), s.charts(), s.domain());
    return set;
}

double casimir_gradient_check(const SeparableStructure& s, const CasimirFunction& c,
                              std::span<const double> x) {
    std::vector<double> J = s.matrix_at(x);
    Vec g = c.gradient(x);
    const int n = s.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            sum += J[static_cast<std::size_t>(i) * n + j] * g[j];
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

std::vector<double> casimir_jacobian(const CasimirSet& set, std::span<const double> x, int n) {
    std::vector<double> jac(static_cast<std::size_t>(set.count()) * n);
    for (int i = 0; i < set.count(); ++i) {
        Vec g = set.items[i].gradient(x);
        for (int j = 0; j < n; ++j)
            jac[static_cast<std::size_t>(i) * n + j] = g[j];
    }
    return jac;
}

} // namespace psep
