#include "hgs/stability.hpp"

#include <cmath>

namespace hgs {

CharPoly charpoly(const DimensionlessParams& zeta) {
    const double b = zeta.beta;
    const double s = std::sqrt(1.0 - b * b);
    const double denom = b * (zeta.rho + s);
    const double p2 =
        (std::pow(1.0 - b * b, 1.5) + zeta.rho * (1.0 - zeta.kappa * b * b * b)) / denom;
    const double p3 = 2.0 * zeta.alpha * std::pow(b, 1.5) * std::pow(1.0 - b * b, 0.75) *
                      std::sqrt(1.0 - zeta.kappa * b) * std::pow(zeta.rho + s, 1.5) / denom;
    return {zeta.epsilon, p2, p3};
}

bool routh_hurwitz(const CharPoly& c) {
    return c.p1 > 0.0 && c.p2 > 0.0 && c.p3 > 0.0 && c.p1 * c.p2 > c.p3;
}

double epsilon_critical(double beta, double alpha, double rho, double kappa) {
    const double s = std::sqrt(1.0 - beta * beta);
    return 2.0 * alpha * std::pow(beta, 1.5) * std::pow(1.0 - beta * beta, 0.75) *
           std::sqrt(1.0 - kappa * beta) * std::pow(rho + s, 1.5) /
           (std::pow(1.0 - beta * beta, 1.5) + rho * (1.0 - kappa * beta * beta * beta));
}

StabilityVerdict classify(const DimensionlessParams& zeta) {
    const double ec = epsilon_critical(zeta.beta, zeta.alpha, zeta.rho, zeta.kappa);
    const double margin = zeta.epsilon - ec;
    Classification cls;
    if (std::abs(margin) <= kCriticalBandRel * ec)
        cls = Classification::Critical;
    else
        cls = margin > 0.0 ? Classification::AsymptoticallyStable : Classification::Unstable;
    return {cls, ec, margin};
}

VyshnegradskiiResult vyshnegradskii(const PhysicalParams& p) {
    const RescaleResult rs = rescale_physical(p);
    const double b = rs.zeta.beta;
    const double rho = rs.zeta.rho;
    const double kappa = rs.zeta.kappa;
    const double s = std::sqrt(1.0 - b * b);
    const double eta = (std::pow(1.0 - b * b, 1.5) + rho - b * b * b * kappa * rho) /
                       (2.0 * std::pow(b, 1.5) * std::pow(1.0 - b * b, 0.75) *
                        std::sqrt(1.0 - kappa * b) * std::pow(s + rho, 1.5));
    // physical |dOmega0/dF| = eta * sqrt((2kl+mg)/(ml)) / (c mu)
    const double denom = 2.0 * p.k * p.l + p.m * p.g;
    const double eta_phys = eta * std::sqrt(denom / (p.m * p.l)) / (p.c * p.mu);
    return {eta, p.b * p.I / p.m * eta_phys > 1.0};
}

}  // namespace hgs
