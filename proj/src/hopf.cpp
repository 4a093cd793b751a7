#include "hgs/hopf.hpp"

#include <cmath>

namespace hgs {

namespace {

CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// nullspace direction of a rank-2 complex 3x3: the best cross product of two rows
CVec3 nullspace_dir(const Complex3x3& M) {
    CVec3 rows[3] = {{M(0, 0), M(0, 1), M(0, 2)},
                     {M(1, 0), M(1, 1), M(1, 2)},
                     {M(2, 0), M(2, 1), M(2, 2)}};
    CVec3 best{};
    double best_norm = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const CVec3 c = cross(rows[i], rows[j]);
            const double n = std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]);
            if (n > best_norm) {
                best_norm = n;
                best = c;
            }
        }
    if (best_norm < 1e-12)
        throw DegenerateSpectrumError("eigenvector extraction: matrix has rank < 2");
    return best;
}

}  // namespace

HopfFrame hopf_frame(const DimensionlessParams& zeta) {
    const double ec = epsilon_critical(zeta.beta, zeta.alpha, zeta.rho, zeta.kappa);
    if (std::abs(zeta.epsilon - ec) > 1e-10 * std::max(1.0, ec))
        throw NotCriticalError("hopf_frame: eps = " + std::to_string(zeta.epsilon) +
                               " is not on the critical surface eps_c = " +
                               std::to_string(ec));

    const DerivedFrequencies fr = derived_frequencies(zeta);
    const double w0 = fr.omega0;
    if (!(w0 > 1e-12)) throw DegenerateSpectrumError("hopf_frame: omega0 not positive");

    const CharPoly cp = charpoly(zeta);
    const auto roots = cubic_roots(cp.p1, cp.p2, cp.p3);
    for (const auto& r : roots)
        if (std::abs(r.imag()) < 1e-12 && std::abs(r - Complex(0, w0)) < 1e-9)
            throw DegenerateSpectrumError("hopf_frame: critical pair not simple");

    const Real3x3 A = jacobian(equilibrium(zeta), zeta);

    Complex3x3 M = Complex3x3::from_real(A);
    for (int i = 0; i < 3; ++i) M(i, i) -= Complex(0, w0);
    CVec3 q = nullspace_dir(M);
    // phase and scale: q[0] = -i exactly (matches the closed-form eigenvector)
    if (std::abs(q[0]) < 1e-12 * norm_inf(q))
        throw DegenerateSpectrumError("hopf_frame: q has vanishing first component");
    q = scale(q, Complex(0, -1) / q[0]);

    Complex3x3 Mt = Complex3x3::from_real(A.transposed());
    for (int i = 0; i < 3; ++i) Mt(i, i) += Complex(0, w0);
    CVec3 p = nullspace_dir(Mt);
    const Complex c = hermitian_inner(p, q);
    if (std::abs(c) < 1e-12)
        throw DegenerateSpectrumError("hopf_frame: <p,q> ~ 0, cannot normalize");
    p = scale(p, 1.0 / std::conj(c));

    return {A, w0, q, p};
}

CVec3 multilinear_B(const CVec3& u, const CVec3& v, const DimensionlessParams& zeta) {
    const double b = zeta.beta;
    const DerivedFrequencies fr = derived_frequencies(zeta);
    const double w1 = fr.omega1;
    const double sg = fr.sigma;
    const double rb = std::sqrt(b);
    const double rs2 = zeta.rho * sg * sg;
    const Complex B2 =
        -3.0 * rb * w1 * (1.0 - rs2) * u[0] * v[0] +
        2.0 * b * (zeta.rho + w1 * rb) * u[2] * v[2] +
        2.0 * sg * std::sqrt(rb * w1) * ((2.0 * b * b - 1.0) - zeta.rho * w1 * rb) / rb *
            (u[0] * v[2] + u[2] * v[0]);
    return {Complex(0.0), B2, -zeta.alpha * b * u[0] * v[0]};
}

CVec3 multilinear_C(const CVec3& u, const CVec3& v, const CVec3& w,
                    const DimensionlessParams& zeta) {
    const double b = zeta.beta;
    const DerivedFrequencies fr = derived_frequencies(zeta);
    const double w1 = fr.omega1;
    const double sg = fr.sigma;
    const double rb = std::sqrt(b);
    const double rs2 = zeta.rho * sg * sg;
    const Complex C2 =
        (1.0 + (1.0 - rs2) * (3.0 - 7.0 * b * b)) / b * u[0] * v[0] * w[0] +
        2.0 * (2.0 * b * b - 1.0 - zeta.rho * rb * w1) *
            (u[0] * v[2] * w[2] + u[2] * v[0] * w[2] + u[2] * v[2] * w[0]) -
        2.0 * rb * sg * std::sqrt(rb * w1) * (zeta.rho + 4.0 * rb * w1) *
            (u[0] * v[0] * w[2] + u[0] * v[2] * w[0] + u[2] * v[0] * w[0]);
    return {Complex(0.0), C2, zeta.alpha * rb * w1 * u[0] * v[0] * w[0]};
}

namespace {

// symmetric second/third derivative tensors of the field at P0 by central
// differences; contracted bilinearly with complex arguments
struct Tensors {
    double B[3][3][3];     // B[i][j][k] = d2 f_i / dx_j dx_k
    double C[3][3][3][3];  // C[i][j][k][l]
};

Vec3 field_at(const State& base, const Vec3& offset, const DimensionlessParams& zeta) {
    return vector_field({base.x + offset[0], base.y + offset[1], base.z + offset[2]},
                        zeta);
}

void fd_hessian(const DimensionlessParams& zeta, double h, double B[3][3][3]) {
    const State p0 = equilibrium(zeta);
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            Vec3 pp{}, pm{}, mp{}, mm{};
            pp[j] += h; pp[k] += h;
            pm[j] += h; pm[k] -= h;
            mp[j] -= h; mp[k] += h;
            mm[j] -= h; mm[k] -= h;
            const Vec3 fpp = field_at(p0, pp, zeta);
            const Vec3 fpm = field_at(p0, pm, zeta);
            const Vec3 fmp = field_at(p0, mp, zeta);
            const Vec3 fmm = field_at(p0, mm, zeta);
            for (int i = 0; i < 3; ++i) {
                const double v = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h * h);
                B[i][j][k] = B[i][k][j] = v;
            }
        }
}

// third directional tensor entry d3 f / dx_j dx_k dx_l via nested central
// differences of the field at step h
void fd_third(const DimensionlessParams& zeta, double h, double C[3][3][3][3]) {
    const State p0 = equilibrium(zeta);
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k)
            for (int l = k; l < 3; ++l) {
                double sum[3] = {0.0, 0.0, 0.0};
                for (int s1 = -1; s1 <= 1; s1 += 2)
                    for (int s2 = -1; s2 <= 1; s2 += 2)
                        for (int s3 = -1; s3 <= 1; s3 += 2) {
                            Vec3 off{};
                            off[j] += s1 * h;
                            off[k] += s2 * h;
                            off[l] += s3 * h;
                            const Vec3 f = field_at(p0, off, zeta);
                            for (int i = 0; i < 3; ++i) sum[i] += s1 * s2 * s3 * f[i];
                        }
                for (int i = 0; i < 3; ++i) {
                    const double v = sum[i] / (8.0 * h * h * h);
                    C[i][j][k][l] = C[i][j][l][k] = C[i][k][j][l] = C[i][k][l][j] =
                        C[i][l][j][k] = C[i][l][k][j] = v;
                }
            }
}

}  // namespace

CVec3 fd_multilinear_B(const CVec3& u, const CVec3& v, const DimensionlessParams& zeta) {
    double B[3][3][3];
    fd_hessian(zeta, 1e-5, B);
    CVec3 out{};
    for (int i = 0; i < 3; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += B[i][j][k] * u[j] * v[k];
        out[i] = s;
    }
    return out;
}

CVec3 fd_multilinear_C(const CVec3& u, const CVec3& v, const CVec3& w,
                       const DimensionlessParams& zeta) {
    // Richardson: T(h) with error ~ h^2 -> (4 T(h/2) - T(h)) / 3
    double C1t[3][3][3][3], C2t[3][3][3][3];
    const double h = 1e-3;
    fd_third(zeta, h, C1t);
    fd_third(zeta, h / 2.0, C2t);
    CVec3 out{};
    for (int i = 0; i < 3; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const double t = (4.0 * C2t[i][j][k][l] - C1t[i][j][k][l]) / 3.0;
                    s += t * u[j] * v[k] * w[l];
                }
        out[i] = s;
    }
    return out;
}

LyapunovReport lyapunov_coefficient(const DimensionlessParams& zeta_c,
                                    double degeneracy_tol) {
    const HopfFrame fr = hopf_frame(zeta_c);
    const double w0 = fr.omega0;
    const CVec3 qb = conj(fr.q);

    const CVec3 Bqq = multilinear_B(fr.q, fr.q, zeta_c);
    const CVec3 Bqqb = multilinear_B(fr.q, qb, zeta_c);

    const Complex3x3 A = Complex3x3::from_real(fr.A);
    const CVec3 h11 = solve3(A, {-Bqqb[0], -Bqqb[1], -Bqqb[2]});

    Complex3x3 M20;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            M20(i, j) = (i == j ? Complex(0, 2.0 * w0) : Complex(0)) - fr.A(i, j);
    const CVec3 h20 = solve3(M20, Bqq);

    const CVec3 Cqqqb = multilinear_C(fr.q, fr.q, qb, zeta_c);
    const CVec3 Bqbh20 = multilinear_B(qb, h20, zeta_c);
    const CVec3 Bqh11 = multilinear_B(fr.q, h11, zeta_c);

    CVec3 rhs;
    for (int i = 0; i < 3; ++i) rhs[i] = Cqqqb[i] + Bqbh20[i] + 2.0 * Bqh11[i];
    const Complex G21 = hermitian_inner(fr.p, rhs);
    const double l1 = G21.real() / (2.0 * w0);

    HopfClass cls;
    if (l1 < -degeneracy_tol)
        cls = HopfClass::Supercritical;
    else if (l1 > degeneracy_tol)
        cls = HopfClass::Subcritical;
    else
        cls = HopfClass::Degenerate;

    return {G21, l1, transversality(zeta_c), cls, h11, h20};
}

double transversality(const DimensionlessParams& zeta_c) {
    const HopfFrame fr = hopf_frame(zeta_c);
    // (dA/d eps) q = (0, -q2, 0)
    const CVec3 dAq = {Complex(0.0), -fr.q[1], Complex(0.0)};
    return hermitian_inner(fr.p, dAq).real();
}

HopfClass classify_hopf(const DimensionlessParams& zeta_c, double tol) {
    return lyapunov_coefficient(zeta_c, tol).classification;
}

}  // namespace hgs
