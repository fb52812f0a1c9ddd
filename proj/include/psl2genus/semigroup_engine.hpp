#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "psl2genus/psl2_model.hpp"

namespace psl2genus {

inline constexpr int64_t kDefaultWindowCap = 10'000'000;
inline constexpr int64_t kDefaultTableCap = 50'000'000;

/// Per-residue minimal representable values of a numerical semigroup,
/// with back-pointers for witness recovery.
struct AperyTable {
    std::vector<int64_t> generators;    // sorted, deduped, gcd 1
    int64_t modulus = 0;                // smallest generator n0
    std::vector<int64_t> least_member;  // [r] = least element ≡ r (mod n0)
    std::vector<int64_t> back_pointer;  // [r] = generator on a minimal path; 0 at r = 0
};

/// Single-source shortest path over residues mod n0 with edge weights equal
/// to the generators, scanned in ascending order; the first minimal path wins.
AperyTable apery_set(std::vector<int64_t> generators,
                     int64_t table_cap = kDefaultTableCap);

/// max(least_member) - modulus; -1 when 1 is a generator.
int64_t frobenius_number(const AperyTable& table);
int64_t frobenius_number(std::vector<int64_t> generators);

bool is_member(const AperyTable& table, int64_t m);

/// Generator -> count with sum gen*count = m, via back-pointer walk plus
/// (m - least_member[r]) / n0 copies of the smallest generator. Deterministic.
std::optional<std::map<int64_t, int64_t>> decompose(const AperyTable& table,
                                                    int64_t m);

struct StableResult {
    int64_t sigma = 0;       // least genus from which the spectrum is gap-free
    int64_t frobenius = 0;   // Frobenius number of the coefficient semigroup
    int64_t run_length = 0;  // c2 = modulus; length of the verified member run
    bool gap_at_prev = false;  // sigma-1 verified as a gap (skipped when sigma == mu)
    bool clamped_to_mu = false;
};

struct WindowEntry {
    int64_t genus = 0;
    Signature witness;
};

/// Membership, gaps and witnesses for a genus interval. members ∪ gaps
/// partitions [max(lo, mu), hi].
struct SpectrumWindow {
    int64_t lo = 0;
    int64_t hi = 0;
    std::vector<WindowEntry> members;
    std::vector<int64_t> gaps;
};

/// Binds a GroupInstance to the Apéry table of its coefficient semigroup M.
/// Spectrum membership is {g : g >= mu and g - 1 + order ∈ M}; h is folded
/// into M because order = 4*c2 is itself a member, so witnesses carry h = 0.
class SpectrumEngine {
public:
    explicit SpectrumEngine(GroupInstance instance,
                            int64_t table_cap = kDefaultTableCap);
    /// Adopt a precomputed table (e.g. from a cache). The table's generators
    /// must equal the instance's coefficient values.
    SpectrumEngine(GroupInstance instance, AperyTable table);

    const GroupInstance& instance() const { return instance_; }
    const AperyTable& table() const { return table_; }

    bool genus_member(int64_t g) const;
    std::optional<Signature> witness(int64_t g) const;
    SpectrumWindow window(int64_t lo, int64_t hi,
                          int64_t cap = kDefaultWindowCap) const;
    int64_t min_genus() const;

    /// sigma = frobenius + 2 - order, clamped up to mu. Verifies internally
    /// that sigma..sigma+c2-1 are all members and sigma-1 is a gap (when
    /// sigma > mu); failure raises invariant-violation.
    StableResult stable_upper_genus() const;

private:
    GroupInstance instance_;
    AperyTable table_;
    std::map<int64_t, int64_t> generator_period_;  // coefficient value -> period
};

}  // namespace psl2genus
