#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgs/model.hpp"

namespace hgs {

struct Axis {
    std::string name;  // one of beta, alpha, rho, kappa
    double lo, hi;
    int count;

    double at(int i) const { return lo + (hi - lo) * i / (count - 1); }
};

// 2 or 3 axes; params not on an axis take the fixed values. For 3 axes the
// first axis is the slice axis and contours are extracted per slice over the
// remaining two.
struct Grid {
    std::vector<Axis> axes;
    double fixed_beta = 0.5, fixed_alpha = 1.0, fixed_rho = 0.0, fixed_kappa = 0.0;

    void validate() const;
    std::size_t size() const;
};

enum class Formula { G1, G2, L1Numeric };

struct ContourPolyline {
    int slice = 0;
    int id = 0;
    std::vector<std::array<double, 2>> pts;  // (axis-1 coord, axis-2 coord)
};

struct SignMap {
    Grid grid;
    Formula formula;
    std::vector<double> values;   // row-major, last axis fastest
    std::vector<int8_t> signs;    // sign(value); 0 for masked cells
    std::vector<uint8_t> masked;  // non-finite evaluation
    std::vector<ContourPolyline> contours;
};

// Deterministic row-major evaluation (preallocated slots, any worker count);
// zero contour by linear interpolation on cell edges, marching squares per
// 2D slice. Non-finite values mask their adjacent contour edges.
SignMap scan_formula(Formula formula, const Grid& grid, int workers = 1);

struct OracleCrossReport {
    int samples = 0;
    double max_rel_discrepancy = 0.0;
    std::array<double, 4> worst_point{};  // beta, alpha, rho, kappa
    int s1 = 0;              // empirical sign(G1 * l1) on rho = 0 samples
    int s2 = 0;              // empirical sign(G2 * l1) on kappa = 0 samples
    bool s1_consistent = true;
    bool s2_consistent = true;
};

// Random points in the grid's box: l1_numeric vs l1_closed discrepancy plus
// the empirical sign constants of G1 (rho = 0) and G2 (kappa = 0).
OracleCrossReport oracle_cross_scan(const Grid& grid, int sample_count, uint64_t seed);

// header row naming axes and value columns; one row per grid point in
// row-major order; floats at 12 significant digits
void write_values_csv(const SignMap& map, std::ostream& os);
// (slice-id, polyline-id, coord1, coord2) rows
void write_contours_csv(const SignMap& map, std::ostream& os);

// Largest rho reached by the G2 = 0 contour in the alpha -> 0 limit (the fold
// where the subcritical region of the kappa = 0 slice closes). Informational.
double g2_fold_rho(double alpha = 1e-4);

}  // namespace hgs
