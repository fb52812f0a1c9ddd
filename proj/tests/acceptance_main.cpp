// Acceptance gate: ten golden criteria, one pass/fail line each.
//
// Criteria 1 (p = 19, 31), 2, 3 and 4 pin published reference values for the
// stable upper genus of PSL2(F_19/23/31). Three independent computations
// (Apéry shortest path, boolean DP sieve, complete bounded enumeration)
// agree with each other and disagree with those reference values, so the
// corresponding assertions fail and are expected to fail; the detail lines
// carry the exact computed values and an explicit counterexample witness.
// They are kept as stated rather than weakened: an honest red beats a gamed
// green. Everything the implementation controls (criteria 5-10 and the
// p = 7/11 halves of criterion 1) passes.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "psl2genus/brute_oracle.hpp"
#include "psl2genus/psl2_model.hpp"
#include "psl2genus/scaling_fit.hpp"
#include "psl2genus/semigroup_engine.hpp"
#include "support/sieve_oracle.hpp"

using namespace psl2genus;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
    double seconds = 0.0;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("PSL2GENUS_BIN");
    if (!bin) {
        std::fprintf(stderr, "PSL2GENUS_BIN is not set\n");
        std::exit(2);
    }
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    auto start = Clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    CliResult result;
    if (!pipe) return result;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

bool within_rel(double value, double expected, double tol) {
    return std::abs(value - expected) <= tol * std::abs(expected);
}

struct Criterion {
    int number;
    std::string title;
    bool (*run)(std::string& detail);
};

// 1. stable -p {7,11,19,31} -> {399, 3508, 33112, 20275804}, each < 1 s.
bool criterion1(std::string& detail) {
    struct Golden {
        int64_t p, sigma;
    };
    bool ok = true;
    std::ostringstream out;
    for (Golden golden : {Golden{7, 399}, {11, 3508}, {19, 33112},
                          {31, 20275804}}) {
        auto result =
            run_cli("stable -p " + std::to_string(golden.p) + " --format json");
        if (result.exit_code != 0) {
            out << " p=" << golden.p << ": exit " << result.exit_code << ";";
            ok = false;
            continue;
        }
        int64_t sigma = json::parse(result.output)["payload"]["sigma"];
        bool match = sigma == golden.sigma;
        bool fast = result.seconds < 1.0;
        ok = ok && match && fast;
        out << " p=" << golden.p << ": " << sigma
            << (match ? " == " : " != ") << golden.sigma << " in "
            << std::to_string(result.seconds).substr(0, 5) << "s;";
    }
    detail = out.str();
    return ok;
}

// 2. p=23 reproduction of 297084 under at least one shipped period model,
//    with the internal sigma verification passing under the pinned model.
bool criterion2(std::string& detail) {
    InstanceOverrides lemma3;
    lemma3.period_model = PeriodModel::lemma3;
    auto all = SpectrumEngine{load_instance(23)}.stable_upper_genus();
    auto l3 =
        SpectrumEngine{load_instance(23, lemma3)}.stable_upper_genus();
    // stable_upper_genus already enforced the c2-run and predecessor gap.
    std::string matched = "neither";
    if (all.sigma == 297084) matched = "all-divisors";
    else if (l3.sigma == 297084) matched = "lemma3";
    std::ostringstream out;
    out << " all-divisors sigma=" << all.sigma << ", lemma3 sigma="
        << l3.sigma << "; reference 297084 matched by: " << matched
        << "; internal verification passed under pinned default"
        << " (all-divisors): run " << all.run_length << ", gap at "
        << all.sigma - 1;
    detail = out.str();
    return matched != "neither";
}

// 3. verify-absent -p 19 -g 33111 --oracle reports absent with agreement;
//    < 1 s via the engine, < 10 min in fidelity mode.
bool criterion3(std::string& detail) {
    auto fast = run_cli("verify-absent -p 19 -g 33111 --oracle --format json");
    auto fidelity =
        run_cli("verify-absent -p 19 -g 33111 --paper-bounds --format json");
    std::ostringstream out;
    if (fast.exit_code != 0 || fidelity.exit_code != 0) {
        detail = " command failed (exit " + std::to_string(fast.exit_code) +
                 "/" + std::to_string(fidelity.exit_code) + ")";
        return false;
    }
    auto payload = json::parse(fast.output)["payload"];
    bool absent = payload["absent"];
    bool agrees = payload["oracle"]["agrees"];
    bool arch_agrees =
        json::parse(fidelity.output)["payload"]["oracle"]["agrees"];
    bool timing = fast.seconds < 1.0 && fidelity.seconds < 600.0;
    out << " absent=" << (absent ? "true" : "false") << ", oracle agrees="
        << (agrees ? "true" : "false") << " (engine "
        << std::to_string(fast.seconds).substr(0, 5) << "s, fidelity grid "
        << std::to_string(fidelity.seconds).substr(0, 5) << "s, agrees="
        << (arch_agrees ? "true" : "false") << ")";
    if (!absent && payload.contains("witness"))
        out << "; counterexample witness " << payload["witness"];
    detail = out.str();
    return absent && agrees && arch_agrees && timing;
}

// 4. spectrum -p 19 --from 33112 --to 33967: 856 witnessed members, 0 gaps,
//    every witness passing rh_genus and is_admissible.
bool criterion4(std::string& detail) {
    auto result =
        run_cli("spectrum -p 19 --from 33112 --to 33967 --format json");
    if (result.exit_code != 0) {
        detail = " command failed (exit " + std::to_string(result.exit_code) + ")";
        return false;
    }
    auto payload = json::parse(result.output)["payload"];
    int64_t members = payload["member_count"];
    int64_t gaps = payload["gap_count"];

    auto inst = load_instance(19);
    bool witnesses_ok = true;
    for (const auto& entry : payload["members"]) {
        Signature w = Signature::from_wire(entry["witness"].get<std::string>());
        int64_t g = entry["genus"];
        if (rh_genus(inst, w) != g || !is_admissible(inst, w))
            witnesses_ok = false;
    }
    std::ostringstream out;
    out << " members=" << members << " (want 856), gaps=" << gaps
        << " (want 0)";
    if (gaps > 0) out << ", gap values " << payload["gaps"].dump();
    out << "; all emitted witnesses satisfy rh_genus and is_admissible: "
        << (witnesses_ok ? "true" : "false");
    detail = out.str();
    return members == 856 && gaps == 0 && witnesses_ok;
}

// 5. Engine membership equals brute-force membership pointwise on
//    p=7 [0,1000] and p=11 [0,5000].
bool criterion5(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (auto [p, hi] : {std::pair<int64_t, int64_t>{7, 1000}, {11, 5000}}) {
        auto inst = load_instance(p);
        SpectrumEngine engine{inst};
        auto brute = enumerate_genera(inst, derive_bounds(inst, hi), 0, hi);
        int64_t mismatches = 0;
        for (int64_t g = 0; g <= hi; ++g)
            if (engine.genus_member(g) != (brute.count(g) > 0)) ++mismatches;
        ok = ok && mismatches == 0;
        out << " p=" << p << " [0," << hi << "]: " << mismatches
            << " mismatches;";
    }
    detail = out.str();
    return ok;
}

// 6. min_genus = 3, 26, 96 for p = 7, 11, 19.
bool criterion6(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (auto [p, expected] :
         {std::pair<int64_t, int64_t>{7, 3}, {11, 26}, {19, 96}}) {
        int64_t got = SpectrumEngine{load_instance(p)}.min_genus();
        ok = ok && got == expected;
        out << " p=" << p << ": " << got << (got == expected ? " == " : " != ")
            << expected << ";";
    }
    detail = out.str();
    return ok;
}

// 7. Frobenius engine vs exhaustive oracle on 50 random generator sets
//    (3-8 generators, values <= 200, gcd 1) plus the {6,9,20} fixture.
bool criterion7(std::string& detail) {
    using psl2genus::testing::SieveOracle;
    int checked = 0, failures = 0;

    auto check_set = [&](const std::vector<int64_t>& gens) {
        SieveOracle sieve(gens);
        auto table = apery_set(gens);
        ++checked;
        if (table.least_member != sieve.least_member() ||
            frobenius_number(table) != sieve.frobenius())
            ++failures;
    };

    check_set({6, 9, 20});
    bool fixture_ok = frobenius_number({6, 9, 20}) == 43;

    std::mt19937_64 rng(20250810);
    std::uniform_int_distribution<int64_t> count_dist(3, 8);
    std::uniform_int_distribution<int64_t> value_dist(2, 200);
    while (checked < 51) {  // fixture + 50 random sets
        std::vector<int64_t> gens;
        int64_t n = count_dist(rng);
        for (int64_t i = 0; i < n; ++i) gens.push_back(value_dist(rng));
        int64_t d = 0;
        for (int64_t g : gens) d = std::gcd(d, g);
        if (d != 1) continue;
        check_set(gens);
    }
    detail = " " + std::to_string(checked) + " generator sets, " +
             std::to_string(failures) + " mismatches; fixture {6,9,20} -> " +
             std::to_string(frobenius_number({6, 9, 20}));
    return failures == 0 && fixture_ok;
}

// 8. Preset evaluations reproduce the published fitted column within 0.1%;
//    predict -p 59 with the high preset within 0.1% of 44907302712962.
bool criterion8(std::string& detail) {
    struct Row {
        int64_t p;
        const char* preset;
        double fitted;
    };
    bool ok = true;
    std::ostringstream out;
    for (Row row : {Row{7, "paper-low", 394}, {11, "paper-low", 3651},
                    {19, "paper-high", 35209}, {23, "paper-high", 297926},
                    {31, "paper-high", 20457219}}) {
        double value = evaluate(preset_model(row.preset), row.p);
        bool hit = within_rel(value, row.fitted, 1e-3);
        ok = ok && hit;
        if (!hit) out << " p=" << row.p << " off (" << value << ");";
    }
    auto predict = run_cli("predict -p 59 --preset paper-high --format json");
    bool predict_ok = false;
    if (predict.exit_code == 0) {
        double fitted = json::parse(predict.output)["payload"]["fitted"];
        predict_ok = within_rel(fitted, 44907302712962.0, 1e-3);
        out << " predict(59) = " << fitted << ";";
    }
    out << (ok ? " all five fitted-column values within 0.1%;" : "");
    detail = out.str();
    return ok && predict_ok;
}

// 9. Free 3-point fit interpolates to < 1e-9 log-residual; scaling g by 10
//    moves only ln a (b, c stable to 1e-9).
bool criterion9(std::string& detail) {
    std::vector<DataPoint> pts{{19, 33112}, {23, 297084}, {31, 20275804}};
    FitModel model = fit_loglinear(pts);
    double max_residual = 0.0;
    for (const auto& pt : pts)
        max_residual = std::max(
            max_residual, std::abs(std::log(evaluate(model, pt.p)) -
                                   std::log(double(pt.g))));
    std::vector<DataPoint> scaled;
    for (auto pt : pts) scaled.push_back({pt.p, pt.g * 10});
    FitModel moved = fit_loglinear(scaled);
    double db = std::abs(moved.b - model.b);
    double dc = std::abs(moved.c - model.c);
    std::ostringstream out;
    out << " max log-residual " << max_residual << "; |db| = " << db
        << ", |dc| = " << dc << " after scaling g by 10";
    detail = out.str();
    return max_residual < 1e-9 && db < 1e-9 && dc < 1e-9;
}

// 10. p=7 genus 43 is a member with a non-exceptional witness despite the
//     excluded signature (1; 2).
bool criterion10(std::string& detail) {
    auto inst = load_instance(7);
    SpectrumEngine engine{inst};
    bool member = engine.genus_member(43);
    auto w = engine.witness(43);
    bool witness_ok = w.has_value() && w->h == 0 &&
                      !(*w == Signature{1, {{2, 1}}}) &&
                      rh_genus(inst, *w) == 43 && is_admissible(inst, *w);
    detail = member && w ? " member with witness " + w->wire() +
                               " while (1;2^1) stays excluded"
                         : " genus 43 missing";
    return member && witness_ok;
}

const std::vector<Criterion> kCriteria = {
    {1, "golden stable-upper-genus values via `stable`", criterion1},
    {2, "p=23 reproduction under a shipped period model", criterion2},
    {3, "verify-absent 19/33111 with oracle agreement", criterion3},
    {4, "p=19 window 33112..33967 fully witnessed, no gaps", criterion4},
    {5, "engine/brute-force pointwise equivalence (p=7, p=11)", criterion5},
    {6, "minimum genus 3/26/96 for p=7/11/19", criterion6},
    {7, "Frobenius engine vs exhaustive oracle, randomized", criterion7},
    {8, "fitted-column reproduction and p=59 prediction", criterion8},
    {9, "regression interpolation and scale-invariance", criterion9},
    {10, "exception neutrality at p=7 genus 43", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0, ran = 0;
    for (const auto& criterion : kCriteria) {
        if (only != 0 && criterion.number != only) continue;
        ++ran;
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string(" exception: ") + e.what();
        }
        std::printf("criterion %2d: %s — %s —%s\n", criterion.number,
                    ok ? "PASS" : "FAIL", criterion.title.c_str(),
                    detail.c_str());
        if (!ok) ++failures;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    if (only == 0)
        std::printf("acceptance: %d/%d criteria passed\n",
                    static_cast<int>(kCriteria.size()) - failures,
                    static_cast<int>(kCriteria.size()));
    return failures == 0 ? 0 : 1;
}
