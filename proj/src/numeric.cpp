#include "hgs/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace hgs {

Vec3 Real3x3::operator*(const Vec3& v) const {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        r[i] = m[3 * i] * v[0] + m[3 * i + 1] * v[1] + m[3 * i + 2] * v[2];
    return r;
}

Real3x3 Real3x3::transposed() const {
    Real3x3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
}

Complex3x3 Complex3x3::from_real(const Real3x3& a) {
    Complex3x3 c;
    for (int i = 0; i < 9; ++i) c.m[i] = a.m[i];
    return c;
}

CVec3 Complex3x3::operator*(const CVec3& v) const {
    CVec3 r{};
    for (int i = 0; i < 3; ++i)
        r[i] = m[3 * i] * v[0] + m[3 * i + 1] * v[1] + m[3 * i + 2] * v[2];
    return r;
}

Complex3x3 Complex3x3::transposed() const {
    Complex3x3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
}

Complex hermitian_inner(const CVec3& p, const CVec3& q) {
    return std::conj(p[0]) * q[0] + std::conj(p[1]) * q[1] + std::conj(p[2]) * q[2];
}

double norm_inf(const Vec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

double norm_inf(const CVec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

namespace {

Complex cubic_eval(double c2, double c1, double c0, Complex x) {
    return ((x + c2) * x + c1) * x + c0;
}

Complex cubic_deriv(double c2, double c1, Complex x) {
    return (3.0 * x + 2.0 * c2) * x + c1;
}

Complex newton_polish(double c2, double c1, double c0, Complex x) {
    Complex d = cubic_deriv(c2, c1, x);
    if (std::abs(d) < 1e-30) return x;
    return x - cubic_eval(c2, c1, c0, x) / d;
}

}  // namespace

std::array<Complex, 3> cubic_roots(double c2, double c1, double c0) {
    // depressed form t^3 + p t + q, lambda = t - c2/3
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    const double mag = std::max(std::sqrt(std::abs(p)), std::cbrt(std::abs(q)));
    std::array<Complex, 3> roots;

    if (mag < 1e-15) {
        roots = {Complex(-shift), Complex(-shift), Complex(-shift)};
        return roots;
    }

    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double disc_scale = std::pow(mag, 6);
    const double disc_n = disc / disc_scale;

    if (disc > 0.0) {
        // three distinct real roots, trigonometric branch (p < 0 here)
        const double rho = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * rho);  // = (3q/2p) sqrt(-3/p)
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double t = rho * std::cos((theta - 2.0 * M_PI * k) / 3.0);
            roots[k] = Complex(t - shift);
        }
    } else {
        // one real root (Cardano, cancellation-safe), then deflate
        const double D = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double u = -std::copysign(1.0, q) * std::cbrt(std::abs(q) / 2.0 + D);
        const double t1 = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
        const double r = t1 - shift;
        // synthetic division: lambda^2 + B lambda + C
        const double B = c2 + r;
        const double C = c1 + r * B;
        const double quad_disc = B * B - 4.0 * C;
        if (quad_disc >= 0.0) {
            const double s = std::sqrt(quad_disc);
            const double r2 = (-B - std::copysign(s, B)) / 2.0;
            const double r3 = (r2 != 0.0) ? C / r2 : (-B + std::copysign(s, B)) / 2.0;
            roots = {Complex(r), Complex(r2), Complex(r3)};
        } else {
            const double re = -B / 2.0;
            const double im = std::sqrt(-quad_disc) / 2.0;
            roots = {Complex(r), Complex(re, im), Complex(re, -im)};
        }
    }

    if (std::abs(disc_n) < 1e-12) {
        for (auto& r : roots) r = newton_polish(c2, c1, c0, r);
        // keep the conjugate-pair postcondition exact after polishing
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (roots[i].imag() != 0.0 &&
                    std::abs(roots[i] - std::conj(roots[j])) <
                        1e-9 * std::max(1.0, std::abs(roots[i]))) {
                    const double re = 0.5 * (roots[i].real() + roots[j].real());
                    const double im = 0.5 * (roots[i].imag() - roots[j].imag());
                    roots[i] = Complex(re, im);
                    roots[j] = Complex(re, -im);
                }
    }
    return roots;
}

namespace {

template <typename Mat, typename Vec, typename Scalar>
Vec solve3_impl(Mat M, Vec b) {
    double max_entry = 0.0;
    for (int i = 0; i < 9; ++i) max_entry = std::max(max_entry, std::abs(M.m[i]));
    const double tol = 1e-13 * std::max(max_entry, 1e-300);

    std::array<int, 3> perm = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        double best = std::abs(M(perm[col], col));
        for (int row = col + 1; row < 3; ++row) {
            const double v = std::abs(M(perm[row], col));
            if (v > best) {
                best = v;
                piv = row;
            }
        }
        if (best < tol)
            throw SingularMatrixError("solve3: pivot " + std::to_string(best) +
                                      " below tolerance " + std::to_string(tol));
        std::swap(perm[col], perm[piv]);
        const int pr = perm[col];
        for (int row = col + 1; row < 3; ++row) {
            const int rr = perm[row];
            const Scalar f = M(rr, col) / M(pr, col);
            for (int j = col; j < 3; ++j) M(rr, j) -= f * M(pr, j);
            b[rr] -= f * b[pr];
        }
    }
    Vec x{};
    for (int i = 2; i >= 0; --i) {
        Scalar s = b[perm[i]];
        for (int j = i + 1; j < 3; ++j) s -= M(perm[i], j) * x[j];
        x[i] = s / M(perm[i], i);
    }
    return x;
}

}  // namespace

CVec3 solve3(const Complex3x3& M, const CVec3& b) {
    return solve3_impl<Complex3x3, CVec3, Complex>(M, b);
}

Vec3 solve3(const Real3x3& M, const Vec3& b) {
    return solve3_impl<Real3x3, Vec3, double>(M, b);
}

}  // namespace hgs
