#include "psl2genus/semigroup_engine.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "psl2genus/checked.hpp"

namespace psl2genus {

AperyTable apery_set(std::vector<int64_t> generators, int64_t table_cap) {
    if (generators.empty())
        raise(ErrorKind::config, "generator set is empty");
    for (int64_t g : generators)
        if (g <= 0) raise(ErrorKind::config, "generators must be positive");

    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()),
                     generators.end());

    int64_t d = 0;
    for (int64_t g : generators) d = std::gcd(d, g);
    if (d != 1)
        raise(ErrorKind::no_finite_frobenius,
              "generator gcd is " + std::to_string(d) +
                  "; no finite Frobenius number");

    const int64_t n0 = generators.front();
    if (n0 > table_cap)
        raise(ErrorKind::resource_cap,
              "Apéry table would need " + std::to_string(n0) +
                  " residues (cap " + std::to_string(table_cap) + ")");

    AperyTable table;
    table.generators = std::move(generators);
    table.modulus = n0;
    table.least_member.assign(static_cast<size_t>(n0), INT64_MAX);
    table.back_pointer.assign(static_cast<size_t>(n0), 0);
    table.least_member[0] = 0;

    // Dijkstra over residue classes; ties popped by residue, relaxations
    // scanned in ascending generator order with strict improvement only,
    // so the table is identical across platforms.
    using Node = std::pair<int64_t, int64_t>;  // (value, residue)
    std::priority_queue<Node, std::vector<Node>, std::greater<>> queue;
    queue.emplace(0, 0);
    while (!queue.empty()) {
        auto [value, r] = queue.top();
        queue.pop();
        if (value != table.least_member[static_cast<size_t>(r)]) continue;
        for (int64_t g : table.generators) {
            int64_t next = checked_add(value, g);
            int64_t r2 = (r + g) % n0;
            if (next < table.least_member[static_cast<size_t>(r2)]) {
                table.least_member[static_cast<size_t>(r2)] = next;
                table.back_pointer[static_cast<size_t>(r2)] = g;
                queue.emplace(next, r2);
            }
        }
    }
    return table;
}

int64_t frobenius_number(const AperyTable& table) {
    int64_t m = *std::max_element(table.least_member.begin(),
                                  table.least_member.end());
    return m - table.modulus;
}

int64_t frobenius_number(std::vector<int64_t> generators) {
    return frobenius_number(apery_set(std::move(generators)));
}

bool is_member(const AperyTable& table, int64_t m) {
    if (m < 0) return false;
    return m >= table.least_member[static_cast<size_t>(m % table.modulus)];
}

std::optional<std::map<int64_t, int64_t>> decompose(const AperyTable& table,
                                                    int64_t m) {
    if (!is_member(table, m)) return std::nullopt;
    std::map<int64_t, int64_t> counts;
    int64_t r = m % table.modulus;
    int64_t base = table.least_member[static_cast<size_t>(r)];
    int64_t extra = (m - base) / table.modulus;
    if (extra > 0) counts[table.modulus] = extra;
    int64_t v = base;
    while (v > 0) {
        int64_t g = table.back_pointer[static_cast<size_t>(v % table.modulus)];
        if (g <= 0 || g > v)
            raise(ErrorKind::invariant_violation,
                  "broken back-pointer chain at " + std::to_string(v));
        ++counts[g];
        v -= g;
    }
    return counts;
}

SpectrumEngine::SpectrumEngine(GroupInstance instance, int64_t table_cap)
    : instance_(std::move(instance)) {
    std::vector<int64_t> gens;
    gens.reserve(instance_.coefficients.size());
    for (const auto& [m, c] : instance_.coefficients) {
        gens.push_back(c);
        generator_period_[c] = m;
    }
    table_ = apery_set(std::move(gens), table_cap);
}

SpectrumEngine::SpectrumEngine(GroupInstance instance, AperyTable table)
    : instance_(std::move(instance)), table_(std::move(table)) {
    std::vector<int64_t> gens;
    for (const auto& [m, c] : instance_.coefficients) {
        gens.push_back(c);
        generator_period_[c] = m;
    }
    if (gens != table_.generators)
        raise(ErrorKind::config,
              "Apéry table generators do not match instance coefficients");
}

bool SpectrumEngine::genus_member(int64_t g) const {
    if (g < 0) raise(ErrorKind::config, "genus must be >= 0");
    if (g < instance_.mu) return false;
    return is_member(table_, checked_add(g - 1, instance_.order));
}

std::optional<Signature> SpectrumEngine::witness(int64_t g) const {
    if (!genus_member(g)) return std::nullopt;
    auto parts = decompose(table_, checked_add(g - 1, instance_.order));
    Signature sig;
    sig.h = 0;
    for (const auto& [gen, count] : *parts)
        sig.counts[generator_period_.at(gen)] = count;

    if (!is_admissible(instance_, sig)) {
        // Canonical witness collided with an exception: trade 4 copies of c2
        // (= order) for one handle. Cannot occur for the shipped exception
        // lists (they all have h > 0); kept for override configurations.
        if (sig.counts[2] >= 4) {
            sig.counts[2] -= 4;
            if (sig.counts[2] == 0) sig.counts.erase(2);
            sig.h = 1;
        }
        if (!is_admissible(instance_, sig))
            raise(ErrorKind::invariant_violation,
                  "no admissible witness for genus " + std::to_string(g));
    }
    return sig;
}

SpectrumWindow SpectrumEngine::window(int64_t lo, int64_t hi,
                                      int64_t cap) const {
    if (lo < 0 || hi < lo)
        raise(ErrorKind::config, "window requires 0 <= lo <= hi");
    SpectrumWindow out;
    out.lo = lo;
    out.hi = hi;
    int64_t start = std::max(lo, instance_.mu);
    if (start > hi) return out;
    if (hi - start + 1 > cap)
        raise(ErrorKind::resource_cap,
              "window spans " + std::to_string(hi - start + 1) +
                  " genera (cap " + std::to_string(cap) + ")");
    for (int64_t g = start; g <= hi; ++g) {
        if (genus_member(g))
            out.members.push_back({g, *witness(g)});
        else
            out.gaps.push_back(g);
    }
    return out;
}

int64_t SpectrumEngine::min_genus() const {
    int64_t g = instance_.mu;
    while (!genus_member(g)) ++g;  // terminates by sigma at the latest
    return g;
}

StableResult SpectrumEngine::stable_upper_genus() const {
    StableResult result;
    result.frobenius = frobenius_number(table_);
    int64_t raw = checked_sub(checked_add(result.frobenius, 2), instance_.order);
    result.clamped_to_mu = raw < instance_.mu;
    result.sigma = result.clamped_to_mu ? instance_.mu : raw;
    result.run_length = table_.modulus;

    // Mandatory self-check: a full c2-length run of members starting at sigma
    // (which implies membership of everything above, by shifting a2), and a
    // gap immediately below unless sigma was clamped. A failure here signals
    // a modeling bug and must never be swallowed.
    for (int64_t i = 0; i < result.run_length; ++i)
        if (!genus_member(checked_add(result.sigma, i)))
            raise(ErrorKind::invariant_violation,
                  "stable genus run broken at sigma + " + std::to_string(i));
    if (result.sigma > instance_.mu) {
        if (genus_member(result.sigma - 1))
            raise(ErrorKind::invariant_violation,
                  "sigma - 1 is unexpectedly a member");
        result.gap_at_prev = true;
    }
    return result;
}

}  // namespace psl2genus
