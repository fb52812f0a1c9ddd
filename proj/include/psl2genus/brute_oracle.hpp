#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "psl2genus/psl2_model.hpp"

namespace psl2genus {

inline constexpr int64_t kDefaultGridCap = 10'000'000'000;

/// Inclusive bounds for the bounded signature enumeration.
struct Bounds {
    int64_t h_max = 0;
    std::map<int64_t, int64_t> a_max;  // period -> inclusive max multiplicity
};

/// Tight inclusive bounds, complete for deciding membership of target_genus:
/// with N = target - 1 + order, a_max[m] = N / c_m and h_max = max(1, N / order).
Bounds derive_bounds(const GroupInstance& instance, int64_t target_genus);

/// The originally published p=19 search grids (exclusive-range ends made
/// inclusive): listing 1 is the single-genus grid, listing 2 the window grid.
/// Only p = 19 grids were ever published; other primes are a config error.
Bounds archival_bounds(const GroupInstance& instance, int listing);

/// Nominal grid size (h_max+1) * prod(a_max[m]+1); resource error above cap.
/// Enumeration prunes on partial sums, so actual work is far smaller.
std::set<int64_t> enumerate_genera(const GroupInstance& instance,
                                   const Bounds& bounds, int64_t lo, int64_t hi,
                                   int64_t cap = kDefaultGridCap);

/// True iff no admissible bounded signature realizes genus g. Sound because
/// derived bounds are complete for g.
bool verify_absent(const GroupInstance& instance, int64_t g,
                   int64_t cap = kDefaultGridCap);

/// Membership of a single genus with early exit on the first witness found.
bool brute_member(const GroupInstance& instance, const Bounds& bounds,
                  int64_t g, int64_t cap = kDefaultGridCap);

}  // namespace psl2genus
