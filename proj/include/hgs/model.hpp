#pragma once

#include <stdexcept>
#include <string>

#include "hgs/numeric.hpp"

namespace hgs {

// State left the admissible region (x outside (0, pi/2) or z < 0). The model
// is meaningless on the boundary, so operations reject instead of clamping.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// zeta = (beta, alpha, epsilon, rho, kappa). Constructor enforces the open /
// half-open admissibility ranges; boundary values are rejected.
struct DimensionlessParams {
    double beta;   // load/torque ratio, (0,1)
    double alpha;  // engine gain, > 0
    double epsilon;  // damping, > 0
    double rho;    // geometry ratio L/l, >= 0
    double kappa;  // spring ratio, [0,1)

    DimensionlessParams(double beta_, double alpha_, double epsilon_, double rho_,
                        double kappa_);

    DimensionlessParams with_epsilon(double eps) const {
        return {beta, alpha, eps, rho, kappa};
    }
};

struct PhysicalParams {
    double m;   // ball mass, kg
    double l;   // arm length, m
    double L;   // half horizontal edge, m, >= 0
    double k;   // spring constant, N/m, >= 0
    double g;   // gravity, m/s^2
    double b;   // friction coefficient (force is -b l phi')
    double c;   // transmission ratio, > 0
    double mu;  // steam torque scale, N*m
    double I;   // flywheel inertia, kg*m^2
    double F;   // load torque, N*m, 0 < F < mu

    void validate() const;
};

struct State {
    double x;  // arm angle, rad, (0, pi/2)
    double y;  // scaled angular rate
    double z;  // scaled flywheel speed, >= 0

    bool in_domain() const;
};

struct DerivedFrequencies {
    double omega0;  // critical frequency
    double omega1;  // sqrt((1-beta^2)/beta)
    double sigma;   // sqrt((1-kappa beta)/(rho + omega1 sqrt(beta)))
    double xi;      // (2,3) Jacobian entry at P0

    // beta near 0 or 1 blows the frequencies up; analysis output flags it.
    bool ill_conditioned() const { return omega0 > 1e3; }
};

struct RescaleResult {
    DimensionlessParams zeta;
    double time_scale;  // t = time_scale * tau
    double y_scale;     // y = y_scale * psi
    double z_scale;     // z = z_scale * Omega
};

// f(s, zeta): the governor field (y, rho z^2 cos x + (z^2+kappa) sin x cos x
// - sin x - eps y, alpha (cos x - beta)). Throws DomainError off-domain.
Vec3 vector_field(const State& s, const DimensionlessParams& zeta);

// physical -> dimensionless: rho = L/l, kappa = 2kl/(2kl+mg),
// eps = (b/m) sqrt(ml/(2kl+mg)), alpha = (c mu / I)(ml/(2kl+mg)), beta = F/mu.
RescaleResult rescale_physical(const PhysicalParams& p);

// The unique admissible equilibrium P0 = (arccos beta, 0, z0).
State equilibrium(const DimensionlessParams& zeta);

// Analytic Jacobian of the field (differentiated from the implemented f, not
// transcribed; the printed matrix is only a test against this).
Real3x3 jacobian(const State& s, const DimensionlessParams& zeta);

DerivedFrequencies derived_frequencies(const DimensionlessParams& zeta);

}  // namespace hgs
