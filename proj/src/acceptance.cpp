#include "hgs/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "hgs/closed_forms.hpp"
#include "hgs/hopf.hpp"
#include "hgs/orbit.hpp"
#include "hgs/scan.hpp"
#include "hgs/stability.hpp"

namespace hgs {

namespace {

// sampling box for "random admissible zeta" used throughout the battery;
// stays away from the beta -> 0/1 blow-up corners
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}

    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    DimensionlessParams zeta() {
        return {uni(0.05, 0.95), uni(0.1, 5.0), uni(0.05, 5.0), uni(0.0, 2.0),
                uni(0.0, 0.95)};
    }
    PhysicalParams physical() {
        PhysicalParams p;
        p.m = uni(0.5, 5.0);
        p.l = uni(0.2, 2.0);
        p.L = uni(0.0, 1.0);
        p.k = uni(0.0, 5.0);
        p.g = uni(5.0, 15.0);
        p.b = uni(0.05, 5.0);
        p.c = uni(0.2, 3.0);
        p.mu = uni(0.5, 5.0);
        p.I = uni(0.5, 5.0);
        p.F = p.mu * uni(0.05, 0.95);
        return p;
    }
};

// orbit test points (region S / region U representatives per special case)
constexpr double kSBeta = 0.5;
const double kSAlphaRho0 = std::sqrt(3.0);
constexpr double kSAlphaKappa0 = 1.7258, kSRho = 0.1;
constexpr double kUBetaRho0 = 0.9, kUAlphaRho0 = 0.26907;
constexpr double kUBetaKappa0 = 0.9, kUAlphaKappa0 = 0.3, kURho = 0.01;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& msg) {
        if (ok) detail << msg;
        ok = false;
    }
};

using CriterionFn = void (*)(Check&);

void c1_equilibrium_residual(Check& c) {
    Sampler s(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DimensionlessParams z = s.zeta();
        worst = std::max(worst, norm_inf(vector_field(equilibrium(z), z)));
    }
    c.detail << "max |f(P0)| = " << worst << " over 1000 samples";
    if (!(worst < 1e-12)) c.fail("residual bound 1e-12 violated");
}

void c2_critical_spectrum(Check& c) {
    Sampler s(102);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        DimensionlessParams z = s.zeta();
        const double ec = epsilon_critical(z.beta, z.alpha, z.rho, z.kappa);
        z = z.with_epsilon(ec);
        const double w0 = derived_frequencies(z).omega0;
        const CharPoly cp = charpoly(z);
        const auto roots = cubic_roots(cp.p1, cp.p2, cp.p3);
        const Complex targets[3] = {Complex(-ec, 0.0), Complex(0.0, w0),
                                    Complex(0.0, -w0)};
        // greedy nearest matching
        bool used[3] = {false, false, false};
        for (const auto& target : targets) {
            double best = 1e300;
            int bi = -1;
            for (int j = 0; j < 3; ++j) {
                if (used[j]) continue;
                const double d = std::abs(roots[j] - target);
                if (d < best) {
                    best = d;
                    bi = j;
                }
            }
            used[bi] = true;
            worst = std::max(worst, best);
        }
    }
    c.detail << "max |root - target| = " << worst << " over 1000 samples";
    if (!(worst < 1e-9)) c.fail("; spectrum bound 1e-9 violated");
}

void c3_routh_hurwitz_equivalence(Check& c) {
    Sampler s(103);
    int tested = 0;
    for (int i = 0; i < 1000; ++i) {
        const DimensionlessParams z = s.zeta();
        const double ec = epsilon_critical(z.beta, z.alpha, z.rho, z.kappa);
        if (std::abs(z.epsilon - ec) <= kCriticalBandRel * ec) continue;
        ++tested;
        const CharPoly cp = charpoly(z);
        const bool rh = routh_hurwitz(cp);
        const auto roots = cubic_roots(cp.p1, cp.p2, cp.p3);
        const bool neg = roots[0].real() < 0 && roots[1].real() < 0 && roots[2].real() < 0;
        const bool cls =
            classify(z).classification == Classification::AsymptoticallyStable;
        if (rh != neg || rh != cls) {
            c.fail("disagreement at beta=" + std::to_string(z.beta) +
                   " eps=" + std::to_string(z.epsilon));
            return;
        }
    }
    c.detail << tested << "/1000 points agree (rest inside critical band)";
}

void c4_vyshnegradskii(Check& c) {
    Sampler s(104);
    for (int i = 0; i < 200; ++i) {
        const PhysicalParams p = s.physical();
        const VyshnegradskiiResult v = vyshnegradskii(p);
        const StabilityVerdict verdict = classify(rescale_physical(p).zeta);
        const bool stable = verdict.classification == Classification::AsymptoticallyStable;
        if (v.stable != stable) {
            c.fail("boolean mismatch at sample " + std::to_string(i) +
                   " (margin = " + std::to_string(verdict.margin) + ")");
            return;
        }
    }
    c.detail << "exact boolean agreement on 200 physical samples";
}

void c5_lyapunov_oracle(Check& c) {
    Sampler s(105);
    double worst = 0.0;
    std::array<double, 4> at{};
    for (int i = 0; i < 200; ++i) {
        const DimensionlessParams z = s.zeta();
        const double ec = epsilon_critical(z.beta, z.alpha, z.rho, z.kappa);
        const double l1n = lyapunov_coefficient(z.with_epsilon(ec)).l1;
        const double l1c = l1_closed(z.beta, z.alpha, z.rho, z.kappa);
        const double rel = std::abs(l1n - l1c) / std::max(std::abs(l1n), 1e-12);
        if (rel > worst) {
            worst = rel;
            at = {z.beta, z.alpha, z.rho, z.kappa};
        }
    }
    c.detail << "max |l1_closed - l1_numeric| rel = " << worst << " (worst at beta="
             << at[0] << ", alpha=" << at[1] << ", rho=" << at[2] << ", kappa=" << at[3]
             << ")";
    if (!(worst < 1e-6)) c.fail("; oracle equivalence 1e-6 violated");
}

void c6_sign_constants(Check& c) {
    int s1 = 0, s2 = 0;
    for (int ib = 0; ib < 20 && c.ok; ++ib)
        for (int ia = 0; ia < 20 && c.ok; ++ia)
            for (int ik = 0; ik < 20; ++ik) {
                const double b = 0.1 + 0.8 * ib / 19.0;
                const double a = 0.2 + 2.8 * ia / 19.0;
                const double k = 0.9 * ik / 19.0;
                const double ec = epsilon_critical(b, a, 0.0, k);
                const double l1 = lyapunov_coefficient({b, a, ec, 0.0, k}).l1;
                const int sg = G1(b, a, k) * l1 > 0 ? 1 : -1;
                if (s1 == 0) s1 = sg;
                if (sg != s1) {
                    c.fail("s1 flips at beta=" + std::to_string(b));
                    break;
                }
            }
    for (int ib = 0; ib < 20 && c.ok; ++ib)
        for (int ia = 0; ia < 20 && c.ok; ++ia)
            for (int ir = 0; ir < 20; ++ir) {
                const double b = 0.1 + 0.8 * ib / 19.0;
                const double a = 0.2 + 2.8 * ia / 19.0;
                const double r = 1.5 * ir / 19.0;
                const double ec = epsilon_critical(b, a, r, 0.0);
                const double l1 = lyapunov_coefficient({b, a, ec, r, 0.0}).l1;
                const int sg = G2(b, a, r) * l1 > 0 ? 1 : -1;
                if (s2 == 0) s2 = sg;
                if (sg != s2) {
                    c.fail("s2 flips at beta=" + std::to_string(b));
                    break;
                }
            }
    for (int ib = 0; ib < 50 && c.ok; ++ib)
        for (int ia = 0; ia < 50; ++ia) {
            const double b = 0.1 + 0.8 * ib / 49.0;
            const double a = 0.2 + 2.8 * ia / 49.0;
            const bool same = (G1(b, a, 0.0) > 0) == (G2(b, a, 0.0) > 0);
            if (!same) {
                c.fail("overlap sign mismatch at beta=" + std::to_string(b) +
                       ", alpha=" + std::to_string(a));
                break;
            }
        }
    if (c.ok) c.detail << "s1 = " << s1 << ", s2 = " << s2 << ", zero exceptions";
}

double bisect_g1(double lo, double hi, double alpha, double kappa) {
    double flo = G1(lo, alpha, kappa);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = G1(mid, alpha, kappa);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void c7_reference_roots(Check& c) {
    const double r1 = bisect_g1(0.5, 0.95, 0.0, 0.0);
    const double r2 = bisect_g1(0.3, 0.7, 0.0, 1.0);
    c.detail << "roots: " << r1 << " (ref 0.7746), " << r2 << " (ref 0.5272)";
    if (!(std::abs(r1 - 0.7746) < 5e-4)) c.fail("; first reference root out of band");
    if (!(std::abs(r2 - 0.5272) < 5e-4)) c.fail("; second reference root out of band");
}

void c8_transversality(Check& c) {
    Sampler s(108);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const DimensionlessParams z = s.zeta();
        const double ec = epsilon_critical(z.beta, z.alpha, z.rho, z.kappa);
        const DimensionlessParams zc = z.with_epsilon(ec);
        const double w0 = derived_frequencies(zc).omega0;
        const double closed = -w0 * w0 / (2.0 * (w0 * w0 + ec * ec));
        const double engine = transversality(zc);
        if (!(engine < 0.0)) {
            c.fail("transversality not negative");
            return;
        }
        // finite-difference eigenvalue derivative across eps_c
        const double h = 1e-6 * ec;
        double re[2];
        for (int sgn = 0; sgn < 2; ++sgn) {
            const CharPoly cp = charpoly(z.with_epsilon(ec + (sgn ? h : -h)));
            const auto roots = cubic_roots(cp.p1, cp.p2, cp.p3);
            re[sgn] = 0.0;
            for (const auto& r : roots)
                if (std::abs(r.imag()) > 1e-9) re[sgn] = r.real();
        }
        const double fd = (re[1] - re[0]) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - closed) / std::abs(closed));
        worst = std::max(worst, std::abs(engine - closed) / std::abs(closed));
    }
    c.detail << "max rel error closed-vs-FD = " << worst << " over 100 samples";
    if (!(worst < 1e-4)) c.fail("; transversality bound 1e-4 violated");
}

void check_supercritical_point(Check& c, double beta, double alpha, double rho,
                               double kappa, const char* label) {
    if (!c.ok) return;
    const double ec = epsilon_critical(beta, alpha, rho, kappa);
    const DimensionlessParams zc(beta, alpha, ec, rho, kappa);
    const double w0 = derived_frequencies(zc).omega0;

    const OrbitReport rep = detect_orbit(zc.with_epsilon(0.98 * ec), Direction::Below);
    if (!rep.found) {
        c.fail(std::string(label) + ": no cycle found (" + rep.diagnostic + ")");
        return;
    }
    const double ref_period = 2.0 * M_PI / w0;
    if (rep.stability != CycleStability::Attracting)
        c.fail(std::string(label) + ": cycle not classified Attracting (slope " +
               std::to_string(rep.slope) + ")");
    if (std::abs(rep.period - ref_period) > 0.1 * ref_period)
        c.fail(std::string(label) + ": period off by more than 10%");
    if (!(rep.residual < 1e-8))
        c.fail(std::string(label) + ": return-map residual too large");

    // above eps_c the equilibrium is locally attracting
    const State p0 = equilibrium(zc);
    IntegrationOptions iopts;
    iopts.converge_radius = 1e-6;
    const Trajectory back = integrate({p0.x + 0.02, p0.y, p0.z},
                                      zc.with_epsilon(1.02 * ec), 5000.0, iopts);
    if (back.reason != Termination::Converged)
        c.fail(std::string(label) + ": no local convergence to P0 above eps_c");
    if (c.ok)
        c.detail << label << ": slope " << rep.slope << ", period " << rep.period
                 << " (ref " << ref_period << "), residual " << rep.residual << "; ";
}

void c9_supercritical(Check& c) {
    check_supercritical_point(c, kSBeta, kSAlphaRho0, 0.0, 0.0, "rho=0");
    check_supercritical_point(c, kSBeta, kSAlphaKappa0, kSRho, 0.0, "kappa=0");
}

void check_subcritical_point(Check& c, double beta, double alpha, double rho,
                             double kappa, const char* label) {
    if (!c.ok) return;
    const double ec = epsilon_critical(beta, alpha, rho, kappa);
    const DimensionlessParams zc(beta, alpha, ec, rho, kappa);
    const OrbitReport rep = detect_orbit(zc.with_epsilon(1.02 * ec), Direction::Above);
    if (!rep.found) {
        c.fail(std::string(label) + ": no repelling cycle (" + rep.diagnostic + ")");
        return;
    }
    if (rep.stability != CycleStability::Repelling)
        c.fail(std::string(label) + ": cycle not classified Repelling (slope " +
               std::to_string(rep.slope) + ")");
    if (!(rep.residual < 1e-8))
        c.fail(std::string(label) + ": fixed-point residual too large");
    if (c.ok)
        c.detail << label << ": slope " << rep.slope << ", amplitude " << rep.amplitude
                 << "; ";
}

void c10_subcritical(Check& c) {
    check_subcritical_point(c, kUBetaRho0, kUAlphaRho0, 0.0, 0.0, "rho=0");
    check_subcritical_point(c, kUBetaKappa0, kUAlphaKappa0, kURho, 0.0, "kappa=0");
}

void c11_amplitude_scaling(Check& c) {
    const double ec = epsilon_critical(kSBeta, kSAlphaRho0, 0.0, 0.0);
    const DimensionlessParams zc(kSBeta, kSAlphaRho0, ec, 0.0, 0.0);
    const AmplitudeScaling sc =
        amplitude_scaling(zc, {0.04 * ec, 0.01 * ec});
    const double ratio = sc.ratios.at(0);
    c.detail << "amplitude(0.04 eps_c)/amplitude(0.01 eps_c) = " << ratio;
    if (!(ratio > 1.6 && ratio < 2.4)) c.fail("; square-root law ratio outside 2 +- 20%");
}

void c12_determinism(Check& c) {
    Grid grid;
    grid.axes = {{"beta", 0.1, 0.9, 80}, {"kappa", 0.0, 0.9, 80}};
    grid.fixed_alpha = 0.5;
    grid.fixed_rho = 0.0;
    std::string outs[3];
    const int workers[3] = {1, 4, 4};
    for (int i = 0; i < 3; ++i) {
        const SignMap m = scan_formula(Formula::G1, grid, workers[i]);
        std::ostringstream v, k;
        write_values_csv(m, v);
        write_contours_csv(m, k);
        outs[i] = v.str() + "\n#contours\n" + k.str();
    }
    if (outs[1] != outs[2]) {
        c.fail("repeated identical scans differ");
        return;
    }
    if (outs[0] != outs[1]) {
        c.fail("worker count changed scan bytes");
        return;
    }
    c.detail << "byte-identical CSV across repeats and worker counts";
}

struct Criterion {
    int id;
    const char* name;
    CriterionFn fn;
};

constexpr Criterion kCriteria[] = {
    {1, "equilibrium-residual", c1_equilibrium_residual},
    {2, "critical-spectrum", c2_critical_spectrum},
    {3, "routh-hurwitz-equivalence", c3_routh_hurwitz_equivalence},
    {4, "vyshnegradskii-equivalence", c4_vyshnegradskii},
    {5, "lyapunov-oracle-equivalence", c5_lyapunov_oracle},
    {6, "slice-sign-constants", c6_sign_constants},
    {7, "reference-roots", c7_reference_roots},
    {8, "transversality", c8_transversality},
    {9, "supercritical-orbit", c9_supercritical},
    {10, "subcritical-orbit", c10_subcritical},
    {11, "amplitude-scaling", c11_amplitude_scaling},
    {12, "scan-determinism", c12_determinism},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    std::vector<CriterionResult> results;
    for (const auto& cr : kCriteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.fn(check);
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back({cr.id, cr.name, check.ok, check.detail.str(), secs});
        out << (check.ok ? "[PASS] " : "[FAIL] ") << cr.id << " " << cr.name << " ("
            << secs << " s): " << check.detail.str() << "\n"
            << std::flush;
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace hgs
