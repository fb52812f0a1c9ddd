#include "psl2genus/psl2_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "psl2genus/checked.hpp"

namespace psl2genus {

const char* period_model_name(PeriodModel model) {
    return model == PeriodModel::all_divisors ? "all-divisors" : "lemma3";
}

PeriodModel period_model_from_name(const std::string& name) {
    if (name == "all-divisors") return PeriodModel::all_divisors;
    if (name == "lemma3") return PeriodModel::lemma3;
    raise(ErrorKind::config, "unknown period model '" + name + "'");
}

int64_t Signature::branch_points() const {
    int64_t r = 0;
    for (const auto& [m, a] : counts) r = checked_add(r, a);
    return r;
}

std::string Signature::wire() const {
    std::ostringstream out;
    out << h << ';';
    bool first = true;
    for (const auto& [m, a] : counts) {
        if (a == 0) continue;
        if (!first) out << ',';
        out << m << '^' << a;
        first = false;
    }
    return out.str();
}

std::string Signature::human() const {
    std::ostringstream out;
    out << '(' << h << ';';
    for (const auto& [m, a] : counts) {
        if (a == 0) continue;
        out << ' ' << m << "^[" << a << "],";
    }
    std::string s = out.str();
    if (s.back() == ',') s.pop_back();
    return s + ")";
}

Signature Signature::from_wire(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        raise(ErrorKind::config, "signature '" + text + "' is missing ';'");
    Signature sig;
    try {
        sig.h = std::stoll(text.substr(0, semi));
        size_t pos = semi + 1;
        while (pos < text.size()) {
            size_t end = text.find(',', pos);
            if (end == std::string::npos) end = text.size();
            std::string part = text.substr(pos, end - pos);
            auto caret = part.find('^');
            if (caret == std::string::npos)
                raise(ErrorKind::config,
                      "signature part '" + part + "' is missing '^'");
            int64_t m = std::stoll(part.substr(0, caret));
            int64_t a = std::stoll(part.substr(caret + 1));
            if (a != 0) sig.counts[m] += a;
            pos = end + 1;
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorKind::config, "cannot parse signature '" + text + "'");
    }
    return sig;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (int64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

int64_t group_order(int64_t p) {
    if (p < 5 || !is_prime(p))
        raise(ErrorKind::invalid_prime,
              "group order requires a prime p >= 5, got " + std::to_string(p));
    // p(p^2-1)/2, factored to stay in range before the halving
    return checked_mul(checked_mul(p, (p - 1) / 2), p + 1);
}

std::optional<int64_t> d_value(int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        raise(ErrorKind::invalid_prime,
              "d-value requires an odd prime, got " + std::to_string(p));
    std::optional<int64_t> best;
    for (int64_t half : {(p - 1) / 2, (p + 1) / 2})
        for (int64_t e = 7; e <= half; ++e)
            if (half % e == 0 && (!best || e < *best)) best = e;
    return best;
}

static void require_supported(int64_t p) {
    if (!is_prime(p))
        raise(ErrorKind::invalid_prime, std::to_string(p) + " is not prime");
    if (p < 7 || p % 4 != 3)
        raise(ErrorKind::unsupported_prime,
              "p = " + std::to_string(p) +
                  " is not a prime ≡ 3 (mod 4) with p >= 7");
}

std::vector<int64_t> periods_for(int64_t p, PeriodModel model) {
    require_supported(p);
    std::set<int64_t> out;
    if (model == PeriodModel::all_divisors) {
        for (int64_t half : {(p - 1) / 2, (p + 1) / 2})
            for (int64_t e = 2; e <= half; ++e)
                if (half % e == 0) out.insert(e);
    } else {
        out.insert(2);
        out.insert(3);
        if (p % 8 == 1 || p % 8 == 7) out.insert(4);
        if (p % 5 == 1 || p % 5 == 4) out.insert(5);
        if (auto d = d_value(p)) out.insert(*d);
        out.insert((p - 1) / 2);
        out.insert((p + 1) / 2);
    }
    out.insert(p);
    return {out.begin(), out.end()};
}

int64_t coefficient(const GroupInstance& instance, int64_t m) {
    auto it = instance.coefficients.find(m);
    if (it == instance.coefficients.end())
        raise(ErrorKind::unknown_period,
              std::to_string(m) + " is not a period of the p = " +
                  std::to_string(instance.p) + " instance");
    return it->second;
}

void validate_signature(const GroupInstance& instance, const Signature& sig) {
    if (sig.h < 0)
        raise(ErrorKind::config, "signature orbit genus must be >= 0");
    for (const auto& [m, a] : sig.counts) {
        if (a < 0)
            raise(ErrorKind::config, "signature multiplicities must be >= 0");
        coefficient(instance, m);  // unknown-period on bad keys
    }
}

int64_t rh_genus(const GroupInstance& instance, const Signature& sig) {
    validate_signature(instance, sig);
    int64_t g = checked_add(1, checked_mul(instance.order, sig.h - 1));
    for (const auto& [m, a] : sig.counts)
        g = checked_add(g, checked_mul(coefficient(instance, m), a));
    return g;
}

static Signature normalized(const Signature& sig) {
    Signature out;
    out.h = sig.h;
    for (const auto& [m, a] : sig.counts)
        if (a != 0) out.counts[m] = a;
    return out;
}

bool is_admissible(const GroupInstance& instance, const Signature& sig) {
    if (rh_genus(instance, sig) < instance.mu) return false;
    Signature norm = normalized(sig);
    for (const auto& ex : instance.exceptions)
        if (normalized(ex) == norm) return false;
    return true;
}

GroupInstance load_instance(int64_t p, const InstanceOverrides& overrides) {
    require_supported(p);

    GroupInstance inst;
    inst.p = p;
    inst.order = group_order(p);
    inst.period_model =
        overrides.period_model.value_or(PeriodModel::all_divisors);
    inst.periods = overrides.periods ? *overrides.periods
                                     : periods_for(p, inst.period_model);

    if (inst.periods.empty() ||
        !std::is_sorted(inst.periods.begin(), inst.periods.end()) ||
        std::adjacent_find(inst.periods.begin(), inst.periods.end()) !=
            inst.periods.end())
        raise(ErrorKind::config, "periods must be strictly increasing");
    for (int64_t required : {int64_t{2}, int64_t{3}, p})
        if (!std::binary_search(inst.periods.begin(), inst.periods.end(),
                                required))
            raise(ErrorKind::config, "periods must contain 2, 3 and p");

    for (int64_t m : inst.periods) {
        if (m < 2) raise(ErrorKind::config, "periods must be >= 2");
        int64_t num = checked_mul(inst.order, m - 1);
        if (num % (2 * m) != 0)
            raise(ErrorKind::config,
                  "order*(m-1) is not divisible by 2m for m = " +
                      std::to_string(m));
        inst.coefficients[m] = num / (2 * m);
    }

    // c_m = (order/2)(1 - 1/m) is strictly increasing in m; a violation here
    // means corrupted inputs rather than a modeling choice.
    int64_t prev = 0;
    for (const auto& [m, c] : inst.coefficients) {
        if (c <= prev)
            raise(ErrorKind::invariant_violation,
                  "coefficients are not strictly increasing");
        prev = c;
    }
    if (inst.order % 4 != 0 || inst.coefficients.at(2) != inst.order / 4)
        raise(ErrorKind::invariant_violation, "c2 != order/4");

    int64_t g = 0;
    for (const auto& [m, c] : inst.coefficients) g = std::gcd(g, c);
    if (g != 1)
        raise(ErrorKind::no_stable_genus,
              "coefficient gcd is " + std::to_string(g) +
                  "; the spectrum has no stable upper genus");

    if (overrides.mu) {
        inst.mu = *overrides.mu;
    } else if (p == 7) {
        inst.mu = 3;
    } else if (p == 11) {
        inst.mu = 26;
    } else if (p == 19) {
        inst.mu = 96;
    } else {
        inst.mu = 2;
        inst.mu_defaulted = true;
    }
    if (inst.mu < 0) raise(ErrorKind::config, "mu must be >= 0");

    if (overrides.exceptions) {
        inst.exceptions = *overrides.exceptions;
    } else if (p == 7) {
        inst.exceptions = {Signature{1, {{2, 1}}}};
    }
    for (const auto& ex : inst.exceptions) validate_signature(inst, ex);

    return inst;
}

}  // namespace psl2genus
