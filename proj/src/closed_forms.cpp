#include "hgs/closed_forms.hpp"

#include <cmath>
#include <span>

#include "hgs/stability.hpp"
#include "lyapunov_tables.inc"

namespace hgs {

namespace {

double ipow(double base, int n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    double r = 1.0;
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// Neumaier compensated sum
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct SliceVars {
    double eps_c, w0, w1, sigma, bq;  // bq = beta^{1/4}
};

SliceVars slice_vars(double beta, double alpha, double rho, double kappa) {
    const DimensionlessParams probe(beta, alpha, 1.0, rho, kappa);
    const DerivedFrequencies fr = derived_frequencies(probe);
    return {epsilon_critical(beta, alpha, rho, kappa), fr.omega0, fr.omega1, fr.sigma,
            std::pow(beta, 0.25)};
}

double eval7(std::span<const detail::Monomial7> table, double alpha,
             const SliceVars& v, double rho) {
    const double sqw1 = std::sqrt(v.w1);
    Kahan acc;
    for (const auto& t : table)
        acc.add(t.coeff * ipow(alpha, t.a) * ipow(v.bq, t.u) * ipow(v.eps_c, t.e) *
                ipow(rho, t.r) * ipow(v.sigma, t.s) * ipow(v.w0, t.W) * ipow(sqw1, t.v));
    return acc.value();
}

}  // namespace

double R_numerator(double beta, double alpha, double rho, double kappa) {
    const SliceVars v = slice_vars(beta, alpha, rho, kappa);
    return eval7(detail::kLyapunovNumerator, alpha, v, rho);
}

double l1_denominator(double beta, double alpha, double rho, double kappa) {
    const SliceVars v = slice_vars(beta, alpha, rho, kappa);
    const double e2 = v.eps_c * v.eps_c;
    const double w2 = v.w0 * v.w0;
    return 4.0 * beta * v.eps_c * w2 * w2 * v.w1 * v.w1 *
           (e2 * e2 + 5.0 * e2 * w2 + 4.0 * w2 * w2);
}

double l1_closed(double beta, double alpha, double rho, double kappa) {
    return -R_numerator(beta, alpha, rho, kappa) /
           l1_denominator(beta, alpha, rho, kappa);
}

double G1(double beta, double alpha, double kappa) {
    if (!(std::isfinite(beta) && std::isfinite(alpha) && std::isfinite(kappa)))
        throw std::invalid_argument("G1: non-finite input");
    const double b = beta, a2 = alpha * alpha, a4 = a2 * a2, k = kappa;
    return -3.0 + 5.0 * k * b - (a2 - 5.0) * b * b + k * (a2 - 7.0) * b * b * b -
           2.0 * a2 * k * k * ipow(b, 4) - (a4 - 2.0 * a2 * k * k) * ipow(b, 6) +
           a4 * k * ipow(b, 7);
}

double G2(double beta, double alpha, double rho) {
    if (!(std::isfinite(beta) && std::isfinite(alpha) && std::isfinite(rho)))
        throw std::invalid_argument("G2: non-finite input");
    const double w = std::sqrt(1.0 - beta * beta);
    Kahan acc;
    for (const auto& t : detail::kG2Numerator)
        acc.add(t.coeff * ipow(alpha, t.a) * ipow(beta, t.b) * ipow(w, t.w) *
                ipow(rho, t.r));
    return acc.value();
}

namespace detail {

double g21_cubic_term_real(double beta, double alpha, double rho, double kappa) {
    const SliceVars v = slice_vars(beta, alpha, rho, kappa);
    const double b = beta, a = alpha, r = rho, e = v.eps_c, w0 = v.w0, w1 = v.w1,
                 sg = v.sigma;
    const double rs2 = r * sg * sg;
    const double w02 = w0 * w0;
    return -1.0 / (2.0 * b * w02 * (e * e + w02)) *
           (2.0 * a * std::pow(b, 2.25) * sg * w02 * std::pow(w1, 1.5) *
                (r + 4.0 * std::sqrt(b) * w1) +
            e * (w02 * (3.0 * rs2 - 4.0 + 7.0 * b * b * (1.0 - rs2)) + b * w02 * w02 +
                 2.0 * a * a * b * b * w1 * w1 *
                     (1.0 - 2.0 * b * b + std::sqrt(b) * r * w1)));
}

double g21_h11_term_real(double beta, double alpha, double rho, double kappa) {
    const SliceVars v = slice_vars(beta, alpha, rho, kappa);
    const double b = beta, a = alpha, r = rho, e = v.eps_c, w0 = v.w0, w1 = v.w1,
                 sg = v.sigma;
    const double rs2 = r * sg * sg;
    const double w02 = w0 * w0;
    const double w04 = w02 * w02;
    auto bq = [&](double n4) { return std::pow(b, n4 / 4.0); };
    auto w1h = [&](double n2) { return std::pow(w1, n2 / 2.0); };
    const double bracket = w02 + 3.0 * w1 * w1 * (rs2 - 1.0);
    const double inner =
        4.0 * ipow(a, 3) * e * r * sg * w1h(11) * (2.0 * bq(14) - bq(6)) +
        4.0 * ipow(a, 4) * bq(13) * r * r * ipow(w1, 6) +
        8.0 * ipow(a, 3) * ipow(b, 4) * e * sg * w1h(13) +
        8.0 * ipow(a, 4) * bq(15) * r * ipow(w1, 7) -
        4.0 * ipow(a, 3) * bq(10) * e * r * sg * w1h(15) +
        4.0 * ipow(a, 4) * bq(17) * ipow(w1, 8) + bq(1) * e * e * w04 * bracket +
        2.0 * a * a * bq(7) * r * w02 * ipow(w1, 3) * bracket +
        2.0 * a * a * bq(9) * w02 * ipow(w1, 4) * bracket -
        2.0 * a * e * sg * w02 * w1h(5) * (2.0 * w02 + 3.0 * w1 * w1 * (rs2 - 1.0)) -
        2.0 * a * bq(2) * e * r * sg * w02 * w1h(7) *
            (2.0 * w02 + 3.0 * w1 * w1 * (rs2 - 1.0)) -
        4.0 * a * b * b * e * sg * w1h(5) *
            (a * a * ipow(w1, 4) * (1.0 + r * r) - 3.0 * w02 * w1 * w1 * (rs2 - 1.0) -
             2.0 * w04);
    return -bq(3) / (e * w04 * w1 * w1 * (e * e + w02)) * inner;
}

double g21_h20_term_real(double beta, double alpha, double rho, double kappa) {
    const SliceVars v = slice_vars(beta, alpha, rho, kappa);
    const double theta = eval7(kThetaRealPart3, alpha, v, rho);
    const double e2 = v.eps_c * v.eps_c;
    const double w2 = v.w0 * v.w0;
    return theta / (2.0 * w2 * w2 * v.w1 * v.w1 *
                    (e2 * e2 + 5.0 * e2 * w2 + 4.0 * w2 * w2));
}

}  // namespace detail

}  // namespace hgs
