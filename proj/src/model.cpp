#include "hgs/model.hpp"

#include <cmath>

namespace hgs {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DimensionlessParams::DimensionlessParams(double beta_, double alpha_, double epsilon_,
                                         double rho_, double kappa_)
    : beta(beta_), alpha(alpha_), epsilon(epsilon_), rho(rho_), kappa(kappa_) {
    require(std::isfinite(beta) && beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
    require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be > 0");
    require(std::isfinite(rho) && rho >= 0.0, "rho must be >= 0");
    require(std::isfinite(kappa) && kappa >= 0.0 && kappa < 1.0, "kappa must be in [0,1)");
}

void PhysicalParams::validate() const {
    require(m > 0 && l > 0 && g > 0 && b > 0 && c > 0 && mu > 0 && I > 0,
            "m, l, g, b, c, mu, I must be > 0");
    require(L >= 0, "L must be >= 0");
    require(k >= 0, "k must be >= 0");
    require(F > 0 && F < mu, "F must satisfy 0 < F < mu");
}

bool State::in_domain() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && x > 0.0 &&
           x < M_PI / 2.0 && z >= 0.0;
}

Vec3 vector_field(const State& s, const DimensionlessParams& zeta) {
    if (!s.in_domain())
        throw DomainError("vector_field: state (" + std::to_string(s.x) + ", " +
                          std::to_string(s.y) + ", " + std::to_string(s.z) +
                          ") outside (0,pi/2) x R x [0,inf)");
    const double sx = std::sin(s.x);
    const double cx = std::cos(s.x);
    const double z2 = s.z * s.z;
    return {s.y,
            zeta.rho * z2 * cx + (z2 + zeta.kappa) * sx * cx - sx - zeta.epsilon * s.y,
            zeta.alpha * (cx - zeta.beta)};
}

RescaleResult rescale_physical(const PhysicalParams& p) {
    p.validate();
    const double denom = 2.0 * p.k * p.l + p.m * p.g;
    const double tau = std::sqrt(p.m * p.l / denom);  // (ml/(2kl+mg))^{1/2}
    DimensionlessParams zeta(p.F / p.mu,
                             p.c * p.mu / p.I * (p.m * p.l / denom),
                             p.b / p.m * tau,
                             p.L / p.l,
                             2.0 * p.k * p.l / denom);
    return {zeta, 1.0 / tau, tau, p.c * tau};
}

State equilibrium(const DimensionlessParams& zeta) {
    const double s = std::sqrt(1.0 - zeta.beta * zeta.beta);
    const double z0 = std::sqrt(1.0 - zeta.kappa * zeta.beta) *
                      std::pow(1.0 - zeta.beta * zeta.beta, 0.25) /
                      (std::sqrt(zeta.beta) * std::sqrt(zeta.rho + s));
    return {std::acos(zeta.beta), 0.0, z0};
}

Real3x3 jacobian(const State& s, const DimensionlessParams& zeta) {
    if (!s.in_domain()) throw DomainError("jacobian: state outside domain");
    const double sx = std::sin(s.x);
    const double cx = std::cos(s.x);
    const double z2 = s.z * s.z;
    Real3x3 J;
    J(0, 0) = 0.0;
    J(0, 1) = 1.0;
    J(0, 2) = 0.0;
    J(1, 0) = -zeta.rho * z2 * sx + (z2 + zeta.kappa) * (cx * cx - sx * sx) - cx;
    J(1, 1) = -zeta.epsilon;
    J(1, 2) = 2.0 * zeta.rho * s.z * cx + 2.0 * s.z * sx * cx;
    J(2, 0) = -zeta.alpha * sx;
    J(2, 1) = 0.0;
    J(2, 2) = 0.0;
    return J;
}

DerivedFrequencies derived_frequencies(const DimensionlessParams& zeta) {
    const double b = zeta.beta;
    const double s = std::sqrt(1.0 - b * b);
    const double w0 = std::sqrt((std::pow(1.0 - b * b, 1.5) +
                                 zeta.rho * (1.0 - zeta.kappa * b * b * b)) /
                                (b * (zeta.rho + s)));
    const double w1 = std::sqrt((1.0 - b * b) / b);
    const double sigma = std::sqrt((1.0 - zeta.kappa * b) / (zeta.rho + w1 * std::sqrt(b)));
    const double xi = 2.0 * std::sqrt(b) * std::pow(1.0 - b * b, 0.25) *
                      std::sqrt(1.0 - zeta.kappa * b) * std::sqrt(zeta.rho + s);
    return {w0, w1, sigma, xi};
}

}  // namespace hgs
