#ifndef PSEP_DYNAMICS_HPP
#define PSEP_DYNAMICS_HPP

#include "psep/casimir.hpp"
#include "psep/darboux.hpp"
#include "psep/expr.hpp"
#include "psep/structure.hpp"

#include <iosfwd>
#include <vector>

namespace psep {

/// x' = J(x) * grad H(x) with the gradient held symbolically.
class PoissonSystem {
public:
    PoissonSystem(SeparableStructure structure, ExprPtr hamiltonian);

    const SeparableStructure& structure() const { return s_; }
    const ExprPtr& hamiltonian() const { return h_; }

    double hamiltonian_value(std::span<const double> x) const;
    Vec gradient(std::span<const double> x) const;
    Vec vector_field(std::span<const double> x) const; // throws DomainError outside the box

private:
    SeparableStructure s_;
    ExprPtr h_;
    std::vector<ExprPtr> grad_;
};

enum class IntegrationStatus { Completed, DomainExit, NonFinite };

const char* to_string(IntegrationStatus s);

/// Fixed-step trajectory; times[k] = k*dt. When integration halts early the
/// partial trajectory is kept and the status says why.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    double dt = 0.0;
    IntegrationStatus status = IntegrationStatus::Completed;
};

/// Classical fixed-step RK4. Halts (status DomainExit) as soon as any stage
/// point leaves the domain box; never evaluates outside it.
Trajectory integrate(const PoissonSystem& p, Vec x0, double t_end, double dt);

/// Max absolute drift |Q(x(t_k)) - Q(x(t_0))| for Q = H and every Casimir.
struct ConservationReport {
    double hamiltonian_drift = 0.0;
    std::vector<double> casimir_drift;
};

ConservationReport conservation_report(const PoissonSystem& p, const CasimirSet& casimirs,
                                       const Trajectory& traj);

/// Integrates in x-coordinates and maps through the transform; integrates
/// the image system z' = J_hat * grad(H o inverse) with the gradient by
/// central differences (step 1e-6); returns the max pointwise distance
/// between the two z-trajectories.
double darboux_consistency_check(const PoissonSystem& p, const DarbouxTransform& t,
                                 Vec x0, double t_end, double dt);

/// CSV: header t,x1,...,xn[,H,C_1,...,C_m], one row per step, 17 significant
/// digits.
void write_csv(std::ostream& os, const Trajectory& traj, const PoissonSystem* system,
               const CasimirSet* casimirs);

} // namespace psep

#endif
