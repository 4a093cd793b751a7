#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace hgs {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

// Thrown by the 3x3 solvers when a pivot underflows the relative tolerance.
// At the points this toolkit visits that always signals a degenerate
// parameter choice rather than a numerical accident.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct Real3x3 {
    std::array<double, 9> m{};  // row-major

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    Vec3 operator*(const Vec3& v) const;
    Real3x3 transposed() const;
};

struct Complex3x3 {
    std::array<Complex, 9> m{};  // row-major

    Complex& operator()(int i, int j) { return m[3 * i + j]; }
    Complex operator()(int i, int j) const { return m[3 * i + j]; }

    static Complex3x3 from_real(const Real3x3& a);
    CVec3 operator*(const CVec3& v) const;
    Complex3x3 transposed() const;
};

// Roots of the monic cubic lambda^3 + c2 lambda^2 + c1 lambda + c0.
// Closed form (trigonometric / Cardano branch by discriminant sign); a complex
// pair is returned as exact conjugates. Near the degenerate-discriminant
// boundary every root gets one Newton polish.
std::array<Complex, 3> cubic_roots(double c2, double c1, double c0);

// Partial-pivot elimination. Pivot tolerance 1e-13 relative to the largest
// entry of M; below it the solve throws SingularMatrixError.
CVec3 solve3(const Complex3x3& M, const CVec3& b);
Vec3 solve3(const Real3x3& M, const Vec3& b);

// <p,q> = sum conj(p_i) q_i -- conjugation on the FIRST slot. Everything in
// the Hopf projection assumes this convention; flipping it flips the sign of
// every imaginary part downstream.
Complex hermitian_inner(const CVec3& p, const CVec3& q);

double norm_inf(const Vec3& v);
double norm_inf(const CVec3& v);

inline CVec3 conj(const CVec3& v) {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

inline CVec3 to_complex(const Vec3& v) {
    return {Complex(v[0]), Complex(v[1]), Complex(v[2])};
}

inline CVec3 add(const CVec3& a, const CVec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline CVec3 scale(const CVec3& a, Complex c) {
    return {c * a[0], c * a[1], c * a[2]};
}

}  // namespace hgs
