#include "hgs/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <thread>

#include "hgs/closed_forms.hpp"
#include "hgs/hopf.hpp"
#include "hgs/stability.hpp"

namespace hgs {

namespace {

constexpr const char* kAxisNames[] = {"beta", "alpha", "rho", "kappa"};

int axis_index(const std::string& name) {
    for (int i = 0; i < 4; ++i)
        if (name == kAxisNames[i]) return i;
    throw std::invalid_argument("unknown axis name: " + name);
}

struct PointBuilder {
    const Grid& grid;
    std::array<int, 4> axis_of = {-1, -1, -1, -1};  // param index -> axis position

    explicit PointBuilder(const Grid& g) : grid(g) {
        for (size_t a = 0; a < g.axes.size(); ++a)
            axis_of[axis_index(g.axes[a].name)] = static_cast<int>(a);
    }

    // param values at multi-index
    std::array<double, 4> at(const std::vector<int>& idx) const {
        std::array<double, 4> p = {grid.fixed_beta, grid.fixed_alpha, grid.fixed_rho,
                                   grid.fixed_kappa};
        for (int j = 0; j < 4; ++j)
            if (axis_of[j] >= 0) p[j] = grid.axes[axis_of[j]].at(idx[axis_of[j]]);
        return p;
    }
};

double evaluate(Formula f, const std::array<double, 4>& p) {
    switch (f) {
        case Formula::G1: return G1(p[0], p[1], p[3]);
        case Formula::G2: return G2(p[0], p[1], p[2]);
        case Formula::L1Numeric: {
            const double ec = epsilon_critical(p[0], p[1], p[2], p[3]);
            return lyapunov_coefficient({p[0], p[1], ec, p[2], p[3]}).l1;
        }
    }
    return 0.0;
}

void admissible_range(int param, double lo, double hi) {
    static constexpr double kLo[4] = {0.0, 0.0, 0.0, 0.0};
    static constexpr double kHi[4] = {1.0, 1e9, 1e9, 1.0};
    const bool lo_ok = param == 2 || param == 3 ? lo >= kLo[param] : lo > kLo[param];
    const bool hi_ok = param == 0 ? hi < kHi[param]
                                  : (param == 3 ? hi < kHi[param] : hi <= kHi[param]);
    if (!lo_ok || !hi_ok)
        throw std::invalid_argument(std::string("axis ") + kAxisNames[param] +
                                    " outside the admissible range");
}

}  // namespace

void Grid::validate() const {
    if (axes.size() != 2 && axes.size() != 3)
        throw std::invalid_argument("grid needs 2 or 3 axes");
    for (const auto& ax : axes) {
        if (ax.count < 2) throw std::invalid_argument("axis count must be >= 2");
        if (!(ax.lo < ax.hi)) throw std::invalid_argument("axis needs lo < hi");
        admissible_range(axis_index(ax.name), ax.lo, ax.hi);
    }
    for (size_t i = 0; i < axes.size(); ++i)
        for (size_t j = i + 1; j < axes.size(); ++j)
            if (axes[i].name == axes[j].name)
                throw std::invalid_argument("duplicate axis " + axes[i].name);
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (const auto& ax : axes) n *= ax.count;
    return n;
}

namespace {

// marching squares over one 2D slice; values indexed v(i,j), i over axis a1
// (rows), j over axis a2 (cols). Emits chained polylines.
void slice_contours(const Grid& grid, const std::vector<double>& values,
                    size_t slice_offset, int slice_id, int n1, int n2,
                    const Axis& ax1, const Axis& ax2,
                    std::vector<ContourPolyline>& out) {
    const auto val = [&](int i, int j) { return values[slice_offset + i * n2 + j]; };

    // a contour vertex lives on a grid edge; key it by (edge orientation, i, j)
    struct Seg {
        long long a, b;
        std::array<double, 2> pa, pb;
    };
    const auto ekey = [&](int horiz, int i, int j) {
        return (static_cast<long long>(horiz) << 40) |
               (static_cast<long long>(i) << 20) | j;
    };
    const auto interp_h = [&](int i, int j) -> std::array<double, 2> {
        // edge between (i,j) and (i,j+1): vary axis2
        const double v0 = val(i, j), v1 = val(i, j + 1);
        const double t = v0 / (v0 - v1);
        return {ax1.at(i), ax2.at(j) + t * (ax2.at(j + 1) - ax2.at(j))};
    };
    const auto interp_v = [&](int i, int j) -> std::array<double, 2> {
        const double v0 = val(i, j), v1 = val(i + 1, j);
        const double t = v0 / (v0 - v1);
        return {ax1.at(i) + t * (ax1.at(i + 1) - ax1.at(i)), ax2.at(j)};
    };

    std::vector<Seg> segs;
    for (int i = 0; i + 1 < n1; ++i)
        for (int j = 0; j + 1 < n2; ++j) {
            const double v00 = val(i, j), v01 = val(i, j + 1), v10 = val(i + 1, j),
                         v11 = val(i + 1, j + 1);
            if (!std::isfinite(v00) || !std::isfinite(v01) || !std::isfinite(v10) ||
                !std::isfinite(v11))
                continue;  // masked cell

            int code = 0;
            if (v00 > 0) code |= 1;
            if (v01 > 0) code |= 2;
            if (v11 > 0) code |= 4;
            if (v10 > 0) code |= 8;
            if (code == 0 || code == 15) continue;

            // edges: 0 = top (i, j)-(i, j+1), 1 = right (i, j+1)-(i+1, j+1),
            //        2 = bottom (i+1, j)-(i+1, j+1), 3 = left (i, j)-(i+1, j)
            const auto edge_point = [&](int e) -> std::pair<long long, std::array<double, 2>> {
                switch (e) {
                    case 0: return {ekey(1, i, j), interp_h(i, j)};
                    case 1: return {ekey(0, i, j + 1), interp_v(i, j + 1)};
                    case 2: return {ekey(1, i + 1, j), interp_h(i + 1, j)};
                    default: return {ekey(0, i, j), interp_v(i, j)};
                }
            };

            static constexpr int kEdges[16][4] = {
                {-1, -1, -1, -1}, {0, 3, -1, -1},  {0, 1, -1, -1},  {1, 3, -1, -1},
                {1, 2, -1, -1},   {0, 3, 1, 2},    {0, 2, -1, -1},  {2, 3, -1, -1},
                {2, 3, -1, -1},   {0, 2, -1, -1},  {0, 1, 2, 3},    {1, 2, -1, -1},
                {1, 3, -1, -1},   {0, 1, -1, -1},  {0, 3, -1, -1},  {-1, -1, -1, -1}};

            int pairs[4];
            std::copy(kEdges[code], kEdges[code] + 4, pairs);
            if (code == 5 || code == 10) {
                // saddle: connect the positive corners iff the center is positive
                const bool connected = 0.25 * (v00 + v01 + v10 + v11) > 0.0;
                if (code == 5) {
                    const int conn[4] = {0, 1, 2, 3}, disc[4] = {0, 3, 1, 2};
                    std::copy(connected ? conn : disc, (connected ? conn : disc) + 4,
                              pairs);
                } else {
                    const int conn[4] = {0, 3, 1, 2}, disc[4] = {0, 1, 2, 3};
                    std::copy(connected ? conn : disc, (connected ? conn : disc) + 4,
                              pairs);
                }
            }
            for (int s = 0; s < 4 && pairs[s] >= 0; s += 2) {
                const auto [ka, pa] = edge_point(pairs[s]);
                const auto [kb, pb] = edge_point(pairs[s + 1]);
                segs.push_back({ka, kb, pa, pb});
            }
        }

    // chain segments into polylines by shared edge keys
    std::multimap<long long, size_t> by_end;
    for (size_t s = 0; s < segs.size(); ++s) {
        by_end.emplace(segs[s].a, s);
        by_end.emplace(segs[s].b, s);
    }
    std::vector<bool> used(segs.size(), false);
    int next_id = 0;
    for (size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        // walk both directions from seed segment
        std::vector<std::array<double, 2>> pts = {segs[s0].pa, segs[s0].pb};
        std::array<long long, 2> ends = {segs[s0].a, segs[s0].b};
        used[s0] = true;
        for (int dir = 0; dir < 2; ++dir) {
            bool grew = true;
            while (grew) {
                grew = false;
                auto [lo, hi] = by_end.equal_range(ends[dir]);
                for (auto it = lo; it != hi; ++it) {
                    const size_t s = it->second;
                    if (used[s]) continue;
                    const bool at_a = segs[s].a == ends[dir];
                    const auto np = at_a ? segs[s].pb : segs[s].pa;
                    const auto nk = at_a ? segs[s].b : segs[s].a;
                    if (dir == 0) {
                        pts.insert(pts.begin(), np);
                    } else {
                        pts.push_back(np);
                    }
                    ends[dir] = nk;
                    used[s] = true;
                    grew = true;
                    break;
                }
            }
        }
        out.push_back({slice_id, next_id++, std::move(pts)});
    }
    (void)grid;
}

}  // namespace

SignMap scan_formula(Formula formula, const Grid& grid, int workers) {
    grid.validate();
    if ((formula == Formula::G1 && grid.fixed_rho != 0.0) ||
        (formula == Formula::G1 &&
         std::any_of(grid.axes.begin(), grid.axes.end(),
                     [](const Axis& a) { return a.name == "rho"; })))
        throw std::invalid_argument("G1 scan requires rho fixed at 0");
    if ((formula == Formula::G2 && grid.fixed_kappa != 0.0) ||
        (formula == Formula::G2 &&
         std::any_of(grid.axes.begin(), grid.axes.end(),
                     [](const Axis& a) { return a.name == "kappa"; })))
        throw std::invalid_argument("G2 scan requires kappa fixed at 0");

    SignMap map;
    map.grid = grid;
    map.formula = formula;
    const std::size_t n = grid.size();
    map.values.assign(n, 0.0);
    map.signs.assign(n, 0);
    map.masked.assign(n, 0);

    const PointBuilder pb(grid);
    const int naxes = static_cast<int>(grid.axes.size());

    const auto eval_range = [&](std::size_t begin, std::size_t end) {
        std::vector<int> idx(naxes, 0);
        for (std::size_t flat = begin; flat < end; ++flat) {
            std::size_t rem = flat;
            for (int a = naxes - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % grid.axes[a].count);
                rem /= grid.axes[a].count;
            }
            double v;
            try {
                v = evaluate(formula, pb.at(idx));
            } catch (const std::exception&) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            map.values[flat] = v;
            if (std::isfinite(v)) {
                map.signs[flat] = v > 0 ? 1 : (v < 0 ? -1 : 0);
            } else {
                map.masked[flat] = 1;
            }
        }
    };

    workers = std::max(1, workers);
    if (workers == 1 || n < 64) {
        eval_range(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            if (b >= n) break;
            pool.emplace_back(eval_range, b, std::min(n, b + chunk));
        }
        for (auto& th : pool) th.join();
    }

    // contours per slice
    if (naxes == 2) {
        slice_contours(grid, map.values, 0, 0, grid.axes[0].count, grid.axes[1].count,
                       grid.axes[0], grid.axes[1], map.contours);
    } else {
        const int n1 = grid.axes[1].count, n2 = grid.axes[2].count;
        for (int s = 0; s < grid.axes[0].count; ++s)
            slice_contours(grid, map.values, static_cast<std::size_t>(s) * n1 * n2, s,
                           n1, n2, grid.axes[1], grid.axes[2], map.contours);
    }
    return map;
}

OracleCrossReport oracle_cross_scan(const Grid& grid, int sample_count, uint64_t seed) {
    grid.validate();
    OracleCrossReport rep;
    std::mt19937_64 rng(seed);

    const PointBuilder pb(grid);
    std::array<std::uniform_real_distribution<double>, 4> dist;
    std::array<bool, 4> on_axis = {false, false, false, false};
    std::array<double, 4> fixed = {grid.fixed_beta, grid.fixed_alpha, grid.fixed_rho,
                                   grid.fixed_kappa};
    for (const auto& ax : grid.axes) {
        const int j = axis_index(ax.name);
        on_axis[j] = true;
        dist[j] = std::uniform_real_distribution<double>(ax.lo, ax.hi);
    }

    for (int i = 0; i < sample_count; ++i) {
        std::array<double, 4> p = fixed;
        for (int j = 0; j < 4; ++j)
            if (on_axis[j]) p[j] = dist[j](rng);

        const double ec = epsilon_critical(p[0], p[1], p[2], p[3]);
        const double l1n = lyapunov_coefficient({p[0], p[1], ec, p[2], p[3]}).l1;
        const double l1c = l1_closed(p[0], p[1], p[2], p[3]);
        const double rel = std::abs(l1n - l1c) / std::max(std::abs(l1n), 1e-12);
        ++rep.samples;
        if (rel > rep.max_rel_discrepancy) {
            rep.max_rel_discrepancy = rel;
            rep.worst_point = p;
        }
        if (p[2] == 0.0) {
            const int s = G1(p[0], p[1], p[3]) * l1n > 0 ? 1 : -1;
            if (rep.s1 == 0)
                rep.s1 = s;
            else if (rep.s1 != s)
                rep.s1_consistent = false;
        }
        if (p[3] == 0.0) {
            const int s = G2(p[0], p[1], p[2]) * l1n > 0 ? 1 : -1;
            if (rep.s2 == 0)
                rep.s2 = s;
            else if (rep.s2 != s)
                rep.s2_consistent = false;
        }
    }
    return rep;
}

namespace {

void put12(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
}

}  // namespace

void write_values_csv(const SignMap& map, std::ostream& os) {
    const char* vname = map.formula == Formula::G1
                            ? "G1"
                            : (map.formula == Formula::G2 ? "G2" : "l1");
    for (const auto& ax : map.grid.axes) os << ax.name << ",";
    os << vname << ",sign\n";
    const int naxes = static_cast<int>(map.grid.axes.size());
    std::vector<int> idx(naxes, 0);
    for (std::size_t flat = 0; flat < map.values.size(); ++flat) {
        std::size_t rem = flat;
        for (int a = naxes - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % map.grid.axes[a].count);
            rem /= map.grid.axes[a].count;
        }
        for (int a = 0; a < naxes; ++a) {
            put12(os, map.grid.axes[a].at(idx[a]));
            os << ",";
        }
        if (map.masked[flat])
            os << "nan,0\n";
        else {
            put12(os, map.values[flat]);
            os << "," << static_cast<int>(map.signs[flat]) << "\n";
        }
    }
}

void write_contours_csv(const SignMap& map, std::ostream& os) {
    const bool three = map.grid.axes.size() == 3;
    const auto& ax1 = three ? map.grid.axes[1] : map.grid.axes[0];
    const auto& ax2 = three ? map.grid.axes[2] : map.grid.axes[1];
    os << "slice,polyline," << ax1.name << "," << ax2.name << "\n";
    for (const auto& poly : map.contours)
        for (const auto& pt : poly.pts) {
            os << poly.slice << "," << poly.id << ",";
            put12(os, pt[0]);
            os << ",";
            put12(os, pt[1]);
            os << "\n";
        }
}

double g2_fold_rho(double alpha) {
    const auto u_exists = [&](double rho) {
        for (int i = 1; i < 400; ++i) {
            const double b = i / 400.0;
            if (G2(b, alpha, rho) > 0.0) return true;
        }
        return false;
    };
    double lo = 0.0, hi = 0.2;
    if (!u_exists(lo)) return 0.0;
    while (u_exists(hi)) hi *= 2.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (u_exists(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace hgs
