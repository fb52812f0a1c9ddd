#include "psl2genus/brute_oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "psl2genus/checked.hpp"

namespace psl2genus {

Bounds derive_bounds(const GroupInstance& instance, int64_t target_genus) {
    if (target_genus < 0)
        raise(ErrorKind::config, "target genus must be >= 0");
    int64_t n = checked_add(target_genus - 1, instance.order);
    Bounds bounds;
    bounds.h_max = std::max<int64_t>(1, n / instance.order);
    for (const auto& [m, c] : instance.coefficients) bounds.a_max[m] = n / c;
    return bounds;
}

Bounds archival_bounds(const GroupInstance& instance, int listing) {
    if (instance.p != 19 ||
        instance.periods != std::vector<int64_t>{2, 3, 5, 9, 10, 19})
        raise(ErrorKind::config,
              "archival grids exist only for the stock p = 19 instance");
    Bounds bounds;
    bounds.h_max = 10;
    if (listing == 1)
        bounds.a_max = {{2, 42}, {3, 32}, {5, 26}, {9, 24}, {10, 23}, {19, 22}};
    else if (listing == 2)
        bounds.a_max = {{2, 43}, {3, 32}, {5, 26}, {9, 24}, {10, 24}, {19, 23}};
    else
        raise(ErrorKind::config, "archival listing must be 1 or 2");
    return bounds;
}

namespace {

// Depth-first walk of the bounded multiplicity grid in fixed period order,
// pruning a branch as soon as the partial genus exceeds hi (all remaining
// contributions are non-negative). Calls emit(genus, signature) for every
// admissible tuple with genus in [lo, hi]; emit returning false stops the
// walk early.
class GridWalker {
public:
    GridWalker(const GroupInstance& instance, const Bounds& bounds, int64_t lo,
               int64_t hi)
        : instance_(instance), bounds_(bounds), lo_(lo), hi_(hi) {
        for (const auto& [m, c] : instance.coefficients) {
            periods_.push_back(m);
            coeffs_.push_back(c);
            auto it = bounds.a_max.find(m);
            limits_.push_back(it == bounds.a_max.end() ? 0 : it->second);
        }
        counts_.assign(periods_.size(), 0);
    }

    template <typename Emit>
    bool run(Emit&& emit) {
        for (int64_t h = 0; h <= bounds_.h_max; ++h) {
            int64_t base = 1 + instance_.order * (h - 1);
            if (base > hi_) break;
            if (!descend(0, h, base, emit)) return false;
        }
        return true;
    }

private:
    template <typename Emit>
    bool descend(size_t idx, int64_t h, int64_t value, Emit&& emit) {
        if (idx == periods_.size()) {
            if (value < lo_ || value < instance_.mu) return true;
            Signature sig;
            sig.h = h;
            for (size_t i = 0; i < periods_.size(); ++i)
                if (counts_[i] != 0) sig.counts[periods_[i]] = counts_[i];
            if (!is_admissible(instance_, sig)) return true;
            return emit(value, sig);
        }
        for (int64_t a = 0; a <= limits_[idx]; ++a) {
            int64_t v = value + coeffs_[idx] * a;
            if (v > hi_) break;
            counts_[idx] = a;
            if (!descend(idx + 1, h, v, emit)) {
                counts_[idx] = 0;
                return false;
            }
        }
        counts_[idx] = 0;
        return true;
    }

    const GroupInstance& instance_;
    const Bounds& bounds_;
    int64_t lo_, hi_;
    std::vector<int64_t> periods_, coeffs_, limits_;
    std::vector<int64_t> counts_;
};

void check_grid_cap(const GroupInstance& instance, const Bounds& bounds,
                    int64_t cap) {
    __int128 size = bounds.h_max + 1;
    for (const auto& [m, c] : instance.coefficients) {
        auto it = bounds.a_max.find(m);
        int64_t limit = it == bounds.a_max.end() ? 0 : it->second;
        size *= limit + 1;
        if (size > cap)
            raise(ErrorKind::resource_cap,
                  "enumeration grid exceeds the cap of " + std::to_string(cap) +
                      " tuples");
    }
}

}  // namespace

std::set<int64_t> enumerate_genera(const GroupInstance& instance,
                                   const Bounds& bounds, int64_t lo, int64_t hi,
                                   int64_t cap) {
    if (hi < lo) raise(ErrorKind::config, "enumerate requires hi >= lo");
    check_grid_cap(instance, bounds, cap);
    std::set<int64_t> out;
    GridWalker(instance, bounds, lo, hi).run([&](int64_t g, const Signature&) {
        out.insert(g);
        return true;
    });
    return out;
}

bool brute_member(const GroupInstance& instance, const Bounds& bounds,
                  int64_t g, int64_t cap) {
    check_grid_cap(instance, bounds, cap);
    bool found = false;
    GridWalker(instance, bounds, g, g).run([&](int64_t, const Signature&) {
        found = true;
        return false;
    });
    return found;
}

bool verify_absent(const GroupInstance& instance, int64_t g, int64_t cap) {
    return !brute_member(instance, derive_bounds(instance, g), g, cap);
}

}  // namespace psl2genus
