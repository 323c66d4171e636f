#include "psep/dynamics.hpp"

#include "psep/errors.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <utility>

namespace psep {

PoissonSystem::PoissonSystem(SeparableStructure structure, ExprPtr hamiltonian)
    : s_(std::move(structure)), h_(std::move(hamiltonian)) {
    int bound = max_variable_index(*h_);
    if (bound > s_.dim())
        throw ValidationError("Hamiltonian references x" + std::to_string(bound) +
                              " but the structure has dimension " + std::to_string(s_.dim()));
    grad_.reserve(s_.dim());
    for (int j = 1; j <= s_.dim(); ++j)
        grad_.push_back(differentiate(h_, j));
}

double PoissonSystem::hamiltonian_value(std::span<const double> x) const {
    return evaluate(*h_, x);
}

Vec PoissonSystem::gradient(std::span<const double> x) const {
    Vec g(grad_.size());
    for (std::size_t j = 0; j < grad_.size(); ++j)
        g[j] = evaluate(*grad_[j], x);
    return g;
}

Vec PoissonSystem::vector_field(std::span<const double> x) const {
    std::vector<double> J = s_.matrix_at(x); // validates the domain
    Vec g = gradient(x);
    const int n = s_.dim();
    Vec v(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            v[i] += J[static_cast<std::size_t>(i) * n + j] * g[j];
    return v;
}

const char* to_string(IntegrationStatus s) {
    switch (s) {
    case IntegrationStatus::Completed:
        return "completed";
    case IntegrationStatus::DomainExit:
        return "domain-exit";
    case IntegrationStatus::NonFinite:
        return "non-finite";
    }
    return "?";
}

namespace {

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

// One RK4 step of a generic field; throws DomainError if any stage leaves
// the field's domain.
template <typename Field>
Vec rk4_step(const Field& f, const Vec& x, double dt) {
    const std::size_t n = x.size();
    Vec k1 = f(x);
    Vec tmp(n);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = x[i] + 0.5 * dt * k1[i];
    Vec k2 = f(tmp);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = x[i] + 0.5 * dt * k2[i];
    Vec k3 = f(tmp);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = x[i] + dt * k3[i];
    Vec k4 = f(tmp);
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

template <typename Field>
Trajectory integrate_generic(const Field& f, const std::function<bool(const Vec&)>& inside,
                             Vec x0, double t_end, double dt) {
    if (!(dt > 0.0))
        throw ValidationError("time step must be positive");
    if (!(t_end > 0.0))
        throw ValidationError("end time must be positive");
    if (!inside(x0))
        throw DomainError("initial state outside the domain");

    Trajectory traj;
    traj.dt = dt;
    long steps = std::llround(t_end / dt);
    if (steps < 1)
        steps = 1;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(std::move(x0));

    for (long k = 1; k <= steps; ++k) {
        Vec next;
        try {
            next = rk4_step(f, traj.states.back(), dt);
        } catch (const DomainError&) {
            traj.status = IntegrationStatus::DomainExit;
            return traj;
        }
        if (!all_finite(next)) {
            traj.status = IntegrationStatus::NonFinite;
            return traj;
        }
        if (!inside(next)) {
            traj.status = IntegrationStatus::DomainExit;
            return traj;
        }
        traj.times.push_back(static_cast<double>(k) * dt);
        traj.states.push_back(std::move(next));
    }
    return traj;
}

} // namespace

Trajectory integrate(const PoissonSystem& p, Vec x0, double t_end, double dt) {
    auto field = [&p](const Vec& x) { return p.vector_field(x); };
    auto inside = [&p](const Vec& x) { return p.structure().domain().contains(x); };
    return integrate_generic(field, inside, std::move(x0), t_end, dt);
}

ConservationReport conservation_report(const PoissonSystem& p, const CasimirSet& casimirs,
                                       const Trajectory& traj) {
    ConservationReport report;
    report.casimir_drift.assign(casimirs.count(), 0.0);
    if (traj.states.empty())
        return report;
    double h0 = p.hamiltonian_value(traj.states.front());
    Vec c0(casimirs.count());
    for (int c = 0; c < casimirs.count(); ++c)
        c0[c] = casimirs.items[c].value(traj.states.front());
    for (const Vec& x : traj.states) {
        report.hamiltonian_drift =
            std::max(report.hamiltonian_drift, std::abs(p.hamiltonian_value(x) - h0));
        for (int c = 0; c < casimirs.count(); ++c)
            report.casimir_drift[c] =
                std::max(report.casimir_drift[c], std::abs(casimirs.items[c].value(x) - c0[c]));
    }
    return report;
}

double darboux_consistency_check(const PoissonSystem& p, const DarbouxTransform& t,
                                 Vec x0, double t_end, double dt) {
    Trajectory in_x = integrate(p, x0, t_end, dt);
    if (in_x.status != IntegrationStatus::Completed)
        throw DomainError(std::string("x-coordinate integration halted: ") +
                          to_string(in_x.status));

    const int n = p.structure().dim();
    const std::vector<double> canon = t.canonical().to_doubles();

    // H in Darboux coordinates, gradient by central differences.
    auto h_hat = [&](const Vec& z) { return p.hamiltonian_value(t.inverse(z)); };
    const double h = 1e-6;
    auto field = [&](const Vec& z) {
        Vec grad(n);
        Vec probe = z;
        for (int j = 0; j < n; ++j) {
            probe[j] = z[j] + h;
            double plus = h_hat(probe);
            probe[j] = z[j] - h;
            double minus = h_hat(probe);
            probe[j] = z[j];
            grad[j] = (plus - minus) / (2.0 * h);
        }
        Vec v(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                v[i] += canon[static_cast<std::size_t>(i) * n + j] * grad[j];
        return v;
    };
    auto inside = [](const Vec&) { return true; }; // z-domain guarded by inverse()

    Trajectory in_z = integrate_generic(field, inside, t.forward(in_x.states.front()), t_end, dt);
    if (in_z.status != IntegrationStatus::Completed)
        throw DomainError(std::string("z-coordinate integration halted: ") +
                          to_string(in_z.status));

    double worst = 0.0;
    for (std::size_t k = 0; k < in_x.states.size(); ++k) {
        Vec mapped = t.forward(in_x.states[k]);
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(mapped[i] - in_z.states[k][i]));
    }
    return worst;
}

void write_csv(std::ostream& os, const Trajectory& traj, const PoissonSystem* system,
               const CasimirSet* casimirs) {
    os << "t";
    int n = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().size());
    for (int i = 1; i <= n; ++i)
        os << ",x" << i;
    if (system)
        os << ",H";
    if (casimirs)
        for (int c = 1; c <= casimirs->count(); ++c)
            os << ",C_" << c;
    os << "\n";
    char buf[64];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << "," << buf;
    };
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
        os << buf;
        for (double v : traj.states[k])
            emit(v);
        if (system)
            emit(system->hamiltonian_value(traj.states[k]));
        if (casimirs)
            for (const CasimirFunction& c : casimirs->items)
                emit(c.value(traj.states[k]));
        os << "\n";
    }
}

} // namespace psep
