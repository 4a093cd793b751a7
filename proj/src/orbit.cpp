#include "hgs/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "hgs/stability.hpp"

namespace hgs {

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// 5th-order weights equal the last A row (FSAL); embedded 4th-order weights:
constexpr double kB4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

using Y = std::array<double, 3>;

Y axpy(const Y& y, double h, const Y& d) {
    return {y[0] + h * d[0], y[1] + h * d[1], y[2] + h * d[2]};
}

struct StepRecord {
    double t0, t1;
    Y y0, y1;
    Y f0, f1;
};

enum class StepFlow { Continue, Stop };

struct Core {
    const DimensionlessParams& zeta;
    double rel_tol, abs_tol;

    Y deriv(const Y& y) const {
        const Vec3 f = vector_field({y[0], y[1], y[2]}, zeta);
        return {f[0], f[1], f[2]};
    }

    // one controlled step from (t, y) with suggested h; returns the accepted
    // record and updates h. Throws DomainError if the solution leaves the
    // domain and the step cannot shrink around it, StepUnderflowError if the
    // step collapses.
    StepRecord step(double t, const Y& y, const Y& f, double& h, double t_limit) {
        for (;;) {
            if (h < 1e-14 || t + h == t)
                throw StepUnderflowError("step size collapsed at t = " +
                                         std::to_string(t));
            const double hh = std::min(h, t_limit - t);
            Y k[7];
            k[0] = f;
            bool domain_ok = true;
            Y ynew{};
            try {
                for (int s = 1; s < 7; ++s) {
                    Y acc = y;
                    for (int j = 0; j < s; ++j) acc = axpy(acc, hh * kA[s][j], k[j]);
                    k[s] = deriv(acc);
                    if (s == 6) ynew = acc;  // stage 7 node is the 5th-order solution
                }
            } catch (const DomainError&) {
                domain_ok = false;
            }
            if (!domain_ok) {
                h = hh / 2.0;
                continue;
            }
            // embedded error estimate
            double err = 0.0;
            for (int i = 0; i < 3; ++i) {
                double e4 = 0.0;
                for (int s = 0; s < 7; ++s) e4 += kB4[s] * k[s][i];
                const double diff = hh * (e4 - (ynew[i] - y[i]) / hh);
                const double sc =
                    abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (diff / sc) * (diff / sc);
            }
            err = std::sqrt(err / 3.0);
            if (err <= 1.0) {
                StepRecord rec{t, t + hh, y, ynew, f, k[6]};
                const double fac =
                    std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
                h = hh * fac;
                return rec;
            }
            h = hh * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
        }
    }

    // cubic Hermite interpolation inside an accepted step
    Y interp(const StepRecord& r, double t) const {
        const double h = r.t1 - r.t0;
        const double s = (t - r.t0) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        Y out{};
        for (int i = 0; i < 3; ++i)
            out[i] = h00 * r.y0[i] + h10 * h * r.f0[i] + h01 * r.y1[i] + h11 * h * r.f1[i];
        return out;
    }

    // accurate state inside a step: single RK5 sub-step of size t - t0
    Y substate(const StepRecord& r, double t) const {
        const double hh = t - r.t0;
        if (hh <= 0.0) return r.y0;
        Y k[7];
        k[0] = r.f0;
        Y ynew = r.y0;
        for (int s = 1; s < 7; ++s) {
            Y acc = r.y0;
            for (int j = 0; j < s; ++j) acc = axpy(acc, hh * kA[s][j], k[j]);
            if (s == 6) {
                ynew = acc;
                break;
            }
            k[s] = deriv(acc);
        }
        return ynew;
    }
};

struct RunResult {
    double t = 0.0;
    Y y{};
    Termination reason = Termination::TimeEnd;
    bool stopped_by_callback = false;
};

// drive the stepper until t_end / domain exit / convergence / callback stop
RunResult run_core(const DimensionlessParams& zeta, const State& s0, double t_end,
                   const IntegrationOptions& opts,
                   const std::function<StepFlow(const StepRecord&, const Core&)>& on_step) {
    if (!(opts.rel_tol >= 1e-12 && opts.rel_tol <= 1e-3 && opts.abs_tol >= 1e-12 &&
          opts.abs_tol <= 1e-3))
        throw std::invalid_argument("integration tolerances must lie in [1e-12, 1e-3]");
    if (!s0.in_domain()) throw DomainError("integrate: initial state outside domain");

    Core core{zeta, opts.rel_tol, opts.abs_tol};
    RunResult res;
    res.t = 0.0;
    res.y = {s0.x, s0.y, s0.z};

    std::optional<State> p0;
    if (opts.converge_radius > 0.0) p0 = equilibrium(zeta);

    Y f = core.deriv(res.y);
    double h = 1e-3;
    while (res.t < t_end) {
        StepRecord rec;
        try {
            rec = core.step(res.t, res.y, f, h, t_end);
        } catch (const StepUnderflowError&) {
            res.reason = Termination::DomainExit;
            return res;
        }
        res.t = rec.t1;
        res.y = rec.y1;
        f = rec.f1;
        if (on_step && on_step(rec, core) == StepFlow::Stop) {
            res.stopped_by_callback = true;
            return res;
        }
        if (p0) {
            const double d = std::max({std::abs(res.y[0] - p0->x),
                                       std::abs(res.y[1] - p0->y),
                                       std::abs(res.y[2] - p0->z)});
            if (d < opts.converge_radius) {
                res.reason = Termination::Converged;
                return res;
            }
        }
    }
    res.reason = Termination::TimeEnd;
    return res;
}

}  // namespace

Trajectory integrate(const State& s0, const DimensionlessParams& zeta, double t_end,
                     const IntegrationOptions& opts) {
    Trajectory traj;
    traj.t.push_back(0.0);
    traj.states.push_back(s0);
    const RunResult res = run_core(
        zeta, s0, t_end, opts, [&](const StepRecord& rec, const Core&) {
            traj.t.push_back(rec.t1);
            traj.states.push_back({rec.y1[0], rec.y1[1], rec.y1[2]});
            return StepFlow::Continue;
        });
    traj.reason = res.reason;
    return traj;
}

namespace {

// locate the y = 0 upward crossing inside a step: Hermite bisection bracket,
// then Newton on exact sub-step states
SectionPoint refine_crossing(const StepRecord& rec, const Core& core) {
    double lo = rec.t0, hi = rec.t1;
    for (int i = 0; i < 60 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (core.interp(rec, mid)[1] < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    Y s = core.substate(rec, t);
    for (int i = 0; i < 3; ++i) {
        const double dy = core.deriv(s)[1];
        if (std::abs(dy) < 1e-12) break;
        const double dt = -s[1] / dy;
        t = std::clamp(t + dt, rec.t0, rec.t1);
        s = core.substate(rec, t);
        if (std::abs(dt) < 1e-13 * std::max(1.0, std::abs(t))) break;
    }
    return {t, s[0], s[2]};
}

}  // namespace

PoincareResult poincare_returns(const State& s0, const DimensionlessParams& zeta,
                                int n_returns, const PoincareOptions& opts) {
    PoincareResult out;
    const State p0 = equilibrium(zeta);

    IntegrationOptions iopts = opts.integ;
    iopts.converge_radius = opts.converge_radius;

    const RunResult res = run_core(
        zeta, s0, opts.t_cap, iopts, [&](const StepRecord& rec, const Core& core) {
            if (opts.escape_radius > 0.0 &&
                std::abs(rec.y1[0] - p0.x) > opts.escape_radius) {
                out.stop = PoincareStop::Escaped;
                return StepFlow::Stop;
            }
            if (rec.y0[1] < 0.0 && rec.y1[1] >= 0.0) {
                out.points.push_back(refine_crossing(rec, core));
                if (static_cast<int>(out.points.size()) >= n_returns) {
                    out.stop = PoincareStop::Complete;
                    return StepFlow::Stop;
                }
            }
            return StepFlow::Continue;
        });

    if (!res.stopped_by_callback) {
        switch (res.reason) {
            case Termination::DomainExit: out.stop = PoincareStop::DomainExit; break;
            case Termination::Converged: out.stop = PoincareStop::ConvergedToEquilibrium; break;
            case Termination::TimeEnd: out.stop = PoincareStop::Budget; break;
        }
    }
    return out;
}

namespace {

struct ReturnMap {
    const DimensionlessParams& zeta;
    const State p0;
    PoincareOptions popts;

    // one application of the section return map, plus the return time
    std::optional<SectionPoint> apply(double x, double z) const {
        const PoincareResult r = poincare_returns({x, 0.0, z}, zeta, 1, popts);
        if (r.points.empty()) return std::nullopt;
        return r.points.front();
    }

    // 2x2 Jacobian of the map at (x, z) by central differences
    bool jacobian(double x, double z, double d, double J[2][2]) const {
        for (int col = 0; col < 2; ++col) {
            const double dx = col == 0 ? d : 0.0;
            const double dz = col == 1 ? d : 0.0;
            const auto plus = apply(x + dx, z + dz);
            const auto minus = apply(x - dx, z - dz);
            if (!plus || !minus) return false;
            J[0][col] = (plus->x - minus->x) / (2.0 * d);
            J[1][col] = (plus->z - minus->z) / (2.0 * d);
        }
        return true;
    }
};

double dominant_multiplier(const double J[2][2]) {
    const double tr = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
    }
    return std::sqrt(std::abs(det));
}

CycleStability stability_label(double slope, double margin) {
    if (slope < 1.0 - margin) return CycleStability::Attracting;
    if (slope > 1.0 + margin) return CycleStability::Repelling;
    return CycleStability::Inconclusive;
}

// Newton on the return map fixed point; returns residual (inf norm)
bool newton_refine(const ReturnMap& map, double& x, double& z, double& period,
                   double& residual, int iters = 8) {
    for (int it = 0; it < iters; ++it) {
        const auto Fs = map.apply(x, z);
        if (!Fs) return false;
        const double rx = Fs->x - x;
        const double rz = Fs->z - z;
        period = Fs->t;
        residual = std::max(std::abs(rx), std::abs(rz));
        if (residual < 1e-12) return true;
        double J[2][2];
        if (!map.jacobian(x, z, 1e-6, J)) return false;
        // solve (J - I) delta = -r
        const double a = J[0][0] - 1.0, b = J[0][1], c = J[1][0], d = J[1][1] - 1.0;
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-14) return false;
        const double dx = (-rx * d + rz * b) / det;
        const double dz = (rx * c - rz * a) / det;
        if (std::abs(dx) > 0.2 || std::abs(dz) > 0.2) return false;  // diverging
        x += dx;
        z += dz;
    }
    const auto Fs = map.apply(x, z);
    if (!Fs) return false;
    residual = std::max(std::abs(Fs->x - x), std::abs(Fs->z - z));
    period = Fs->t;
    return residual < 1e-8;
}

// max |x - x0| over one loop from the section point, dense subsamples
double loop_amplitude(const DimensionlessParams& zeta, const State& p0, double x,
                      double z, const IntegrationOptions& iopts) {
    double amp = std::abs(x - p0.x);
    run_core(zeta, {x, 0.0, z}, 1e4, iopts,
             [&](const StepRecord& rec, const Core& core) {
                 for (int k = 1; k <= 4; ++k) {
                     const double tt =
                         rec.t0 + (rec.t1 - rec.t0) * static_cast<double>(k) / 4.0;
                     amp = std::max(amp, std::abs(core.interp(rec, tt)[0] - p0.x));
                 }
                 return (rec.y0[1] < 0.0 && rec.y1[1] >= 0.0) ? StepFlow::Stop
                                                              : StepFlow::Continue;
             });
    return amp;
}

OrbitReport detect_attracting(const DimensionlessParams& zeta, const OrbitOptions& opts) {
    OrbitReport rep;
    const State p0 = equilibrium(zeta);

    PoincareOptions popts;
    popts.integ = opts.integ;
    popts.t_cap = 1e6;
    const ReturnMap map{zeta, p0, popts};

    double x = p0.x + opts.initial_perturbation;
    double z = p0.z;
    double pdx = 0.0, pdz = 0.0;  // previous increment
    bool have_prev = false, have_prev_inc = false;
    int since_aitken = 0;

    for (int n = 0; n < opts.max_returns; ++n) {
        const auto next = map.apply(x, z);
        if (!next) {
            rep.diagnostic = "trajectory left the section loop (domain exit or budget)";
            return rep;
        }
        rep.returns_used = n + 1;
        const double nx = next->x, nz = next->z;
        const double dx = nx - x, dz = nz - z;
        const double inc = std::max(std::abs(dx), std::abs(dz));
        const double radius = std::hypot(nx - p0.x, nz - p0.z);
        if (radius < 1e-5) {
            rep.diagnostic = "returns spiral into the equilibrium; no cycle on this side";
            return rep;
        }
        if (inc < opts.fixed_point_tol && have_prev) {
            x = nx;
            z = nz;
            break;
        }
        ++since_aitken;
        if (have_prev_inc && since_aitken >= 6) {
            // geometric tail: jump to the extrapolated fixed point
            const double pinc = std::max(std::abs(pdx), std::abs(pdz));
            if (pinc > 0.0) {
                const double q = inc / pinc;
                if (q > 0.2 && q < 0.98) {
                    const double gx = nx + dx * q / (1.0 - q);
                    const double gz = nz + dz * q / (1.0 - q);
                    if (std::isfinite(gx) && std::isfinite(gz) &&
                        std::abs(gx - nx) < 0.1) {
                        x = gx;
                        z = gz;
                        since_aitken = 0;
                        have_prev = have_prev_inc = false;
                        pdx = pdz = 0.0;
                        continue;
                    }
                }
            }
        }
        pdx = dx;
        pdz = dz;
        have_prev_inc = have_prev;
        have_prev = true;
        x = nx;
        z = nz;
    }

    double period = 0.0, residual = 1.0;
    if (!newton_refine(map, x, z, period, residual)) {
        rep.diagnostic = "return-map Newton refinement failed to converge";
        return rep;
    }

    double J[2][2];
    if (!map.jacobian(x, z, 1e-6, J)) {
        rep.diagnostic = "could not evaluate return-map Jacobian";
        return rep;
    }
    rep.found = true;
    rep.period = period;
    rep.residual = residual;
    rep.slope = dominant_multiplier(J);
    rep.stability = stability_label(rep.slope, opts.stability_margin);
    rep.amplitude = loop_amplitude(zeta, p0, x, z, opts.integ);
    rep.section_x = x;
    rep.section_z = z;
    return rep;
}

// classify a probe radius for the repelling-cycle bisection
enum class Probe { Inward, Outward, Undecided };

Probe classify_radius(const ReturnMap& map, const State& p0, double r,
                      const OrbitOptions& opts) {
    PoincareOptions popts = map.popts;
    popts.escape_radius = opts.escape_radius;
    popts.converge_radius = 1e-6;
    popts.t_cap = 1e5;
    const PoincareResult res =
        poincare_returns({p0.x + r, 0.0, p0.z}, map.zeta, 60, popts);
    if (res.stop == PoincareStop::Escaped || res.stop == PoincareStop::DomainExit)
        return Probe::Outward;
    if (res.stop == PoincareStop::ConvergedToEquilibrium) return Probe::Inward;
    if (res.points.size() < 4) return Probe::Undecided;
    const double first = std::abs(res.points.front().x - p0.x);
    const double last = std::abs(res.points.back().x - p0.x);
    if (last < 0.5 * first) return Probe::Inward;
    if (last > 2.0 * first) return Probe::Outward;
    return last < first ? Probe::Inward : Probe::Outward;
}

OrbitReport detect_repelling(const DimensionlessParams& zeta, const OrbitOptions& opts) {
    OrbitReport rep;
    const State p0 = equilibrium(zeta);

    PoincareOptions popts;
    popts.integ = opts.integ;
    popts.t_cap = 1e6;
    const ReturnMap map{zeta, p0, popts};

    double lo = opts.bisect_inner, hi = opts.bisect_outer;
    const Probe c_lo = classify_radius(map, p0, lo, opts);
    const Probe c_hi = classify_radius(map, p0, hi, opts);
    if (c_lo != Probe::Inward) {
        rep.diagnostic = "inner bracket radius does not spiral into the equilibrium";
        return rep;
    }
    if (c_hi != Probe::Outward) {
        rep.diagnostic = "outer bracket radius does not escape";
        return rep;
    }
    for (int i = 0; i < opts.bisect_steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const Probe c = classify_radius(map, p0, mid, opts);
        if (c == Probe::Inward)
            lo = mid;
        else
            hi = mid;
        rep.returns_used += 1;
        if (hi - lo < 1e-6) break;
    }
    const double rstar = 0.5 * (lo + hi);

    // settle onto the section image, then Newton-refine the unstable cycle
    double x = p0.x + rstar, z = p0.z;
    const auto settled = map.apply(x, z);
    if (settled) {
        x = settled->x;
        z = settled->z;
    }
    double period = 0.0, residual = 1.0;
    if (!newton_refine(map, x, z, period, residual)) {
        rep.diagnostic = "bisection bracketed a cycle but Newton refinement failed";
        return rep;
    }
    double J[2][2];
    if (!map.jacobian(x, z, 1e-6, J)) {
        rep.diagnostic = "could not evaluate return-map Jacobian";
        return rep;
    }
    rep.found = true;
    rep.period = period;
    rep.residual = residual;
    rep.slope = dominant_multiplier(J);
    rep.stability = stability_label(rep.slope, opts.stability_margin);
    rep.amplitude = loop_amplitude(zeta, p0, x, z, opts.integ);
    rep.section_x = x;
    rep.section_z = z;
    rep.diagnostic = "bracket: inner spirals to equilibrium, outer escapes";
    return rep;
}

}  // namespace

OrbitReport detect_orbit(const DimensionlessParams& zeta, Direction direction,
                         const OrbitOptions& opts) {
    const double ec = epsilon_critical(zeta.beta, zeta.alpha, zeta.rho, zeta.kappa);
    if (std::abs(zeta.epsilon / ec - 1.0) >= 0.1)
        throw std::invalid_argument(
            "detect_orbit: eps must be within 10% of eps_c = " + std::to_string(ec));
    return direction == Direction::Below ? detect_attracting(zeta, opts)
                                         : detect_repelling(zeta, opts);
}

AmplitudeScaling amplitude_scaling(const DimensionlessParams& zeta_c,
                                   const std::vector<double>& deltas,
                                   const OrbitOptions& opts) {
    const double ec = epsilon_critical(zeta_c.beta, zeta_c.alpha, zeta_c.rho, zeta_c.kappa);
    AmplitudeScaling out;
    for (const double d : deltas) {
        if (!(d > 0.0 && d < 0.05 * ec + 1e-15))
            throw std::invalid_argument("amplitude_scaling: deltas must lie in (0, 0.05 eps_c]");
        OrbitOptions o = opts;
        // orbit shrinks like sqrt(delta); keep the seed inside the basin
        o.initial_perturbation = std::min(opts.initial_perturbation, std::sqrt(d / ec));
        const OrbitReport rep =
            detect_orbit(zeta_c.with_epsilon(ec - d), Direction::Below, o);
        if (!rep.found)
            throw std::runtime_error("amplitude_scaling: no attracting cycle at delta = " +
                                     std::to_string(d) + ": " + rep.diagnostic);
        out.deltas.push_back(d);
        out.amplitudes.push_back(rep.amplitude);
        out.periods.push_back(rep.period);
    }
    for (size_t i = 0; i + 1 < out.amplitudes.size(); ++i)
        out.ratios.push_back(out.amplitudes[i] / out.amplitudes[i + 1]);
    return out;
}

}  // namespace hgs
