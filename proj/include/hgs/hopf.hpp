#pragma once

#include "hgs/model.hpp"
#include "hgs/stability.hpp"

namespace hgs {

struct NotCriticalError : std::runtime_error {
    explicit NotCriticalError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSpectrumError : std::runtime_error {
    explicit DegenerateSpectrumError(const std::string& what) : std::runtime_error(what) {}
};

// Jacobian at criticality plus the normalized critical eigenvectors:
// A q = i omega0 q, A^T p = -i omega0 p, <p,q> = 1. Phase convention: q[0]
// is -i times a positive real, so reports are reproducible run to run.
struct HopfFrame {
    Real3x3 A;
    double omega0;
    CVec3 q;
    CVec3 p;
};

enum class HopfClass { Supercritical, Subcritical, Degenerate };

struct LyapunovReport {
    Complex G21;
    double l1;              // Re(G21) / (2 omega0)
    double transversality;  // gamma'(eps_c), always negative here
    HopfClass classification;
    CVec3 h11;  // -A^{-1} B(q, conj q); real up to rounding
    CVec3 h20;  // (2 i omega0 I - A)^{-1} B(q, q)
};

// Requires |eps - eps_c| < 1e-10 * max(1, eps_c); throws NotCriticalError
// otherwise, DegenerateSpectrumError if the imaginary pair is not simple.
HopfFrame hopf_frame(const DimensionlessParams& zeta);

// Quadratic and cubic multilinear forms of the field's Taylor expansion at
// P0(zeta), extended bilinearly to complex arguments. The expansion-point
// shift is internal; callers pass displacement vectors.
// Closed forms (default engine path):
CVec3 multilinear_B(const CVec3& u, const CVec3& v, const DimensionlessParams& zeta);
CVec3 multilinear_C(const CVec3& u, const CVec3& v, const CVec3& w,
                    const DimensionlessParams& zeta);

// Finite-difference versions (typo-proof oracle; central differences of the
// field at P0, third order with Richardson extrapolation at step 1e-3).
CVec3 fd_multilinear_B(const CVec3& u, const CVec3& v, const DimensionlessParams& zeta);
CVec3 fd_multilinear_C(const CVec3& u, const CVec3& v, const CVec3& w,
                       const DimensionlessParams& zeta);

// Full projection chain at the Hopf point: h11, h20,
// G21 = <p, C(q,q,qbar) + B(qbar,h20) + 2 B(q,h11)>, l1 = Re(G21)/(2 omega0).
LyapunovReport lyapunov_coefficient(const DimensionlessParams& zeta_c,
                                    double degeneracy_tol = 1e-8);

// gamma'(eps_c) = Re<p, (dA/d eps) q> with dA/d eps having the single entry
// (2,2) = -1; equals -omega0^2 / (2 (omega0^2 + eps_c^2)).
double transversality(const DimensionlessParams& zeta_c);

HopfClass classify_hopf(const DimensionlessParams& zeta_c, double tol = 1e-8);

}  // namespace hgs
