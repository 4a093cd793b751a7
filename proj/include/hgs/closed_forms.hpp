#pragma once

#include "hgs/model.hpp"

namespace hgs {

// Numerator R(beta, alpha, rho, kappa) of the first Lyapunov coefficient:
// l1 = -R / (4 beta eps_c omega0^4 omega1^2 (eps_c^4 + 5 eps_c^2 omega0^2 +
// 4 omega0^4)), denominator positive on the admissible region.
double R_numerator(double beta, double alpha, double rho, double kappa);

// rho = 0 slice numerator: sign(G1) = sign(l1). Polynomial, evaluated on the
// closed domain (alpha = 0 and kappa = 1 limits allowed).
double G1(double beta, double alpha, double kappa);

// kappa = 0 slice numerator: sign(G2) = sign(l1). Compensated summation over
// the 160-term monomial table.
double G2(double beta, double alpha, double rho);

double l1_closed(double beta, double alpha, double rho, double kappa);
double l1_denominator(double beta, double alpha, double rho, double kappa);

namespace detail {

// closed forms of the three real parts assembling Re(G21); each is tested
// against its projection-engine counterpart to localize transcription errors
double g21_cubic_term_real(double beta, double alpha, double rho, double kappa);
double g21_h11_term_real(double beta, double alpha, double rho, double kappa);
double g21_h20_term_real(double beta, double alpha, double rho, double kappa);

}  // namespace detail

}  // namespace hgs
