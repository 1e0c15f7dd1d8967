#pragma once
// Distribution function, non-increasing rearrangement f*, and symmetric
// (bell-shaped) rearrangement f# of grid functions.
//
// Discrete placement convention: sorted |f| values are assigned to nodes
// ordered by |x| ascending, negative node first on ties.  On the grid
// x_j = -L + j dx (origin at index n/2) that order is
//   n/2, n/2-1, n/2+1, n/2-2, n/2+2, ..., 1, n-1, 0,
// so rank(x) = 2|x|/dx for x >= 0 and 2|x|/dx - 1 for x < 0, which is the
// discrete form of f#(x) = f*(2|x|).  The convention is deterministic, keeps
// supports nested, and makes f# a pure permutation of |f| (every rearranged
// quantity that is permutation-invariant is preserved exactly).

#include <algorithm>
#include <vector>

#include "wavemax/grid.hpp"

namespace wavemax {

// d_f(s) = measure of the superlevel set {|f| > s}.
inline double dist_fn(const GridFunction& f, double s) {
    if (s < 0.0) throw std::invalid_argument("dist_fn: level must be >= 0");
    int count = 0;
    for (double t : f.v)
        if (std::abs(t) > s) ++count;
    return f.grid->dx * count;
}

// Node indices ordered by |x| ascending, negative first on ties.
inline std::vector<int> rearrangement_order(const Grid& g) {
    std::vector<int> order(g.n);
    int mid = g.n / 2;
    order[0] = mid;
    int pos = 1;
    for (int m = 1; m < mid; ++m) {
        order[pos++] = mid - m;
        order[pos++] = mid + m;
    }
    order[pos] = 0;  // x = -L, the lone extreme node
    return order;
}

// f*: sorted descending |f_j|, i.e. samples of the non-increasing
// rearrangement at t = 0, dx, 2dx, ... on [0, 2L).
inline std::vector<double> decreasing_rearrangement(const GridFunction& f) {
    std::vector<double> vals(f.v.size());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = std::abs(f.v[j]);
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

inline GridFunction symmetric_rearrangement(const GridFunction& f) {
    std::vector<double> vals = decreasing_rearrangement(f);
    std::vector<int> order = rearrangement_order(*f.grid);
    GridFunction out(*f.grid);
    for (int r = 0; r < f.grid->n; ++r) out.v[order[r]] = vals[r];
    return out;
}

// f is bell-shaped iff it equals its own symmetric rearrangement.
inline bool is_bell_shaped(const GridFunction& f) {
    GridFunction r = symmetric_rearrangement(f);
    for (int j = 0; j < f.n(); ++j)
        if (f.v[j] != r.v[j]) return false;
    return true;
}

}  // namespace wavemax
