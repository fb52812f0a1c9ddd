#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psl2genus/errors.hpp"

namespace psl2genus {

enum class PeriodModel { all_divisors, lemma3 };

const char* period_model_name(PeriodModel model);
PeriodModel period_model_from_name(const std::string& name);

/// A branching signature (h; m1^[a1], m2^[a2], ...): orbit genus plus a
/// multiplicity per branching period. Zero multiplicities are dropped.
struct Signature {
    int64_t h = 0;
    std::map<int64_t, int64_t> counts;

    int64_t branch_points() const;  // r = sum of multiplicities

    bool operator==(const Signature&) const = default;

    std::string wire() const;   // "0;2^1,3^1,7^1" (CSV/JSON cell format)
    std::string human() const;  // "(0; 2^[1], 3^[1], 7^[1])"
    static Signature from_wire(const std::string& text);
};

/// All arithmetic data of PSL2(F_p) needed for spectrum computation.
/// Immutable after load_instance; all operations on it are pure.
struct GroupInstance {
    int64_t p = 0;
    int64_t order = 0;
    std::vector<int64_t> periods;            // strictly increasing, >= 2
    std::map<int64_t, int64_t> coefficients; // period m -> order*(m-1)/(2m)
    int64_t mu = 0;                          // minimum-genus threshold
    std::vector<Signature> exceptions;       // excluded despite the inequality
    PeriodModel period_model = PeriodModel::all_divisors;
    bool mu_defaulted = false;               // mu came from the fallback value
};

struct InstanceOverrides {
    std::optional<std::vector<int64_t>> periods;
    std::optional<int64_t> mu;
    std::optional<std::vector<Signature>> exceptions;
    std::optional<PeriodModel> period_model;
};

bool is_prime(int64_t n);

/// |PSL2(F_p)| = p(p^2-1)/2 for odd primes p >= 5.
int64_t group_order(int64_t p);

/// min{e >= 7 : e | (p-1)/2 or e | (p+1)/2}, or absent.
std::optional<int64_t> d_value(int64_t p);

/// Allowed branching orders for p ≡ 3 (mod 4), p >= 7.
/// all_divisors: {e >= 2 : e | (p-1)/2 or e | (p+1)/2} ∪ {p}.
/// lemma3: {2,3} ∪ {4 if p ≡ ±1 (8)} ∪ {5 if p ≡ ±1 (5)} ∪ {d} ∪ {(p∓1)/2} ∪ {p}.
std::vector<int64_t> periods_for(int64_t p, PeriodModel model);

/// The multiplier of a_m in the admissibility inequality: order*(m-1)/(2m).
int64_t coefficient(const GroupInstance& instance, int64_t m);

/// Throws unknown-period if a count key is not an instance period.
void validate_signature(const GroupInstance& instance, const Signature& sig);

/// g = 1 + order*(h-1) + sum_m coefficient(m)*a_m. May be negative for tiny
/// signatures; the caller interprets.
int64_t rh_genus(const GroupInstance& instance, const Signature& sig);

/// rh_genus >= mu and the signature is not an instance exception.
bool is_admissible(const GroupInstance& instance, const Signature& sig);

/// Build an instance for p ≡ 3 (mod 4), p >= 7. Defaults: all-divisors
/// periods; mu 3/26/96 for p = 7/11/19, else 2; exceptions {(1;2)} for p = 7.
/// Coefficient gcd != 1 is a hard error (no stable genus would exist).
GroupInstance load_instance(int64_t p, const InstanceOverrides& overrides = {});

}  // namespace psl2genus
