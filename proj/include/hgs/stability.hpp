#pragma once

#include <array>

#include "hgs/model.hpp"

namespace hgs {

// Coefficients of lambda^3 + p1 lambda^2 + p2 lambda + p3, the negated
// characteristic polynomial of Df(P0). All three are positive for every
// admissible zeta.
struct CharPoly {
    double p1, p2, p3;
};

enum class Classification { AsymptoticallyStable, Unstable, Critical };

struct StabilityVerdict {
    Classification classification;
    double eps_c;
    double margin;  // epsilon - eps_c
};

struct VyshnegradskiiResult {
    double eta;    // dimensionless non-uniformity |dOmega0/dF| (scaled form)
    bool stable;   // (b I / m) * eta_physical > 1, equivalent to eps > eps_c
};

CharPoly charpoly(const DimensionlessParams& zeta);

// Strict Routh-Hurwitz for the cubic: p1,p2,p3 > 0 and p1 p2 > p3.
// True iff all roots have negative real parts; equality-boundary returns false.
bool routh_hurwitz(const CharPoly& c);

// Critical damping: at eps = eps_c, p1 p2 = p3 and the spectrum is
// {-eps_c, +i omega0, -i omega0}.
double epsilon_critical(double beta, double alpha, double rho, double kappa);

// AsymptoticallyStable iff eps > eps_c, Unstable iff eps < eps_c;
// Critical within 1e-12 relative of eps_c.
StabilityVerdict classify(const DimensionlessParams& zeta);

// Vyshnegradskii's rule in physical parameters. eta is the dimensionless
// non-uniformity; the boolean uses the physical |dOmega0/dF| (the printed
// dimensionless eta times ((2kl+mg)/(ml))^{1/2}/(c mu)), which makes
// (bI/m) eta_phys > 1 exactly equivalent to eps > eps_c.
VyshnegradskiiResult vyshnegradskii(const PhysicalParams& p);

inline constexpr double kCriticalBandRel = 1e-12;

}  // namespace hgs
