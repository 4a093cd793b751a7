#pragma once

#include <string>
#include <vector>

#include "hgs/model.hpp"

namespace hgs {

struct StepUnderflowError : std::runtime_error {
    explicit StepUnderflowError(const std::string& what) : std::runtime_error(what) {}
};

enum class Termination { TimeEnd, DomainExit, Converged };

struct Trajectory {
    std::vector<double> t;       // strictly increasing accepted-step times
    std::vector<State> states;   // matching states
    Termination reason = Termination::TimeEnd;
};

struct IntegrationOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    // stop early when the state comes within this inf-norm distance of the
    // equilibrium (0 disables)
    double converge_radius = 0.0;
};

// Adaptive Dormand-Prince 5(4). Local error per step within the tolerances;
// every accepted step is recorded, dense enough for inverse-interpolated
// section crossings. Tolerances are validated against [1e-12, 1e-3].
Trajectory integrate(const State& s0, const DimensionlessParams& zeta, double t_end,
                     const IntegrationOptions& opts = {});

struct SectionPoint {
    double t, x, z;  // y = 0, y' > 0 crossing
};

enum class PoincareStop { Complete, DomainExit, ConvergedToEquilibrium, Escaped, Budget };

struct PoincareOptions {
    IntegrationOptions integ{};
    double t_cap = 2e4;
    double converge_radius = 0.0;  // distance to P0 that counts as "spiraled in"
    double escape_radius = 0.0;    // |x - x0| that counts as "escaped" (0 disables)
};

struct PoincareResult {
    std::vector<SectionPoint> points;
    PoincareStop stop = PoincareStop::Complete;
};

// Successive returns to the half-plane y = 0, y' > 0 through P0. Crossing
// times located to ~1e-10 by Hermite bracketing plus Newton on an exact
// sub-step evaluation.
PoincareResult poincare_returns(const State& s0, const DimensionlessParams& zeta,
                                int n_returns, const PoincareOptions& opts = {});

enum class CycleStability { Attracting, Repelling, Inconclusive };
enum class Direction { Below, Above };  // which side of eps_c the cycle lives on

struct OrbitReport {
    bool found = false;
    double period = 0.0;
    double amplitude = 0.0;      // max |x - x0| over one period
    double slope = 0.0;          // dominant return-map multiplier magnitude
    CycleStability stability = CycleStability::Inconclusive;
    double residual = 0.0;       // |P(s*) - s*|_inf of the reported fixed point
    int returns_used = 0;
    std::string diagnostic;
    double section_x = 0.0, section_z = 0.0;  // fixed point on the section
};

struct OrbitOptions {
    IntegrationOptions integ{};
    double initial_perturbation = 0.02;  // x-offset of the seed state
    double fixed_point_tol = 1e-9;       // section increment that counts as converged
    int max_returns = 3000;
    double bisect_inner = 1e-4;  // repelling-cycle bracket, x-units
    double bisect_outer = 0.3;
    int bisect_steps = 40;
    double escape_radius = 0.5;  // |x - x0| beyond which a run counts as escaped
    double stability_margin = 0.05;
};

// Empirical verification of the bifurcating orbit. Below: iterate the return
// map (Aitken-accelerated) to the attracting cycle and Newton-polish.
// Above: bisect the initial radius between spiral-in and escape, then
// Newton-refine the repelling cycle. found=false carries a diagnostic.
OrbitReport detect_orbit(const DimensionlessParams& zeta, Direction direction,
                         const OrbitOptions& opts = {});

struct AmplitudeScaling {
    std::vector<double> deltas;      // eps offsets below eps_c
    std::vector<double> amplitudes;  // cycle amplitude at each delta
    std::vector<double> periods;
    std::vector<double> ratios;      // amplitudes[i] / amplitudes[i+1]
};

// Normal-form square-root law: amplitude(delta)/amplitude(delta/4) ~ 2.
AmplitudeScaling amplitude_scaling(const DimensionlessParams& zeta_c,
                                   const std::vector<double>& deltas,
                                   const OrbitOptions& opts = {});

}  // namespace hgs
