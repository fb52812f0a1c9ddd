// psl2genus — exact genus spectra of PSL2(F_p) for primes p ≡ 3 (mod 4).
//
// Subcommands: instance, stable, min-genus, spectrum, witness, verify-absent,
// fit, predict, selftest. Output formats: human (default), csv, json.
// Exit codes: 0 success, 2 usage/config error, 3 internal invariant
// violation, 4 resource cap.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "psl2genus/brute_oracle.hpp"
#include "psl2genus/io.hpp"
#include "psl2genus/psl2_model.hpp"
#include "psl2genus/scaling_fit.hpp"
#include "psl2genus/semigroup_engine.hpp"

namespace pg = psl2genus;
using pg::Json;

namespace {

struct InstanceFlags {
    int64_t p = 0;
    std::string period_model;
    std::optional<int64_t> mu;
    std::string config_path;
};

struct OutputOptions {
    std::string format = "human";
};

void add_format_flag(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"human", "csv", "json"}))
        ->capture_default_str();
}

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags) {
    auto* p_opt = cmd->add_option("-p,--prime", flags.p,
                                  "Prime p ≡ 3 (mod 4), p >= 7");
    cmd->add_option("--period-model", flags.period_model,
                    "Period model (all-divisors | lemma3)")
        ->check(CLI::IsMember({"all-divisors", "lemma3"}));
    cmd->add_option_function<int64_t>(
        "--mu", [&flags](const int64_t& v) { flags.mu = v; },
        "Minimum-genus threshold override");
    auto* cfg = cmd->add_option("--config", flags.config_path,
                                "Instance config JSON file");
    cmd->callback([p_opt, cfg, &flags]() {
        if (p_opt->count() == 0 && cfg->count() == 0)
            throw CLI::RequiredError("-p or --config");
    });
}

pg::GroupInstance build_instance(const InstanceFlags& flags) {
    pg::InstanceOverrides overrides;
    int64_t p = flags.p;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in)
            pg::raise(pg::ErrorKind::config,
                      "cannot open config file " + flags.config_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            pg::raise(pg::ErrorKind::config,
                      "bad config JSON: " + std::string(e.what()));
        }
        overrides = pg::overrides_from_json(j);
        if (p == 0) {
            auto cfg_p = pg::config_prime(j);
            if (!cfg_p)
                pg::raise(pg::ErrorKind::config,
                          "config file has no \"p\" and -p was not given");
            p = *cfg_p;
        }
    }
    if (!flags.period_model.empty())
        overrides.period_model = pg::period_model_from_name(flags.period_model);
    if (flags.mu) overrides.mu = flags.mu;

    pg::GroupInstance inst = pg::load_instance(p, overrides);
    if (inst.mu_defaulted)
        std::cerr << "note: no published minimum-genus threshold for p = "
                  << inst.p << "; using mu = " << inst.mu << "\n";
    return inst;
}

// Apéry tables are cached on disk only for query-style commands; commands
// whose job is verification (stable, verify-absent, selftest) always
// recompute so a stale cache can never vouch for itself.
pg::SpectrumEngine make_engine(pg::GroupInstance inst, bool allow_cache) {
    const char* dir = std::getenv("GENUS_CACHE_DIR");
    if (allow_cache && dir && *dir) {
        if (auto table = pg::load_cached_table(dir, inst)) {
            std::cerr << "note: Apéry table loaded from cache\n";
            return pg::SpectrumEngine(std::move(inst), std::move(*table));
        }
        pg::SpectrumEngine engine{std::move(inst)};
        if (!pg::store_cached_table(dir, engine.instance(), engine.table()))
            std::cerr << "note: could not write Apéry cache to " << dir << "\n";
        return engine;
    }
    return pg::SpectrumEngine{std::move(inst)};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const OutputOptions& out, const std::string& command,
          const pg::GroupInstance* inst, const Json& payload,
          const std::vector<std::string>& csv_lines,
          const std::vector<std::string>& human_lines) {
    if (out.format == "json") {
        Json envelope{{"command", command},
                      {"format", "json"},
                      {"instance", inst ? pg::instance_summary_json(*inst)
                                        : Json(nullptr)},
                      {"payload", payload}};
        std::cout << envelope.dump(2) << "\n";
    } else if (out.format == "csv") {
        std::cerr << "command: " << command << "\n";
        if (inst)
            std::cerr << "instance: p=" << inst->p << " order=" << inst->order
                      << " mu=" << inst->mu << " period-model="
                      << pg::period_model_name(inst->period_model) << "\n";
        for (const auto& line : csv_lines) std::cout << line << "\n";
    } else {
        std::cout << "command: " << command << "\n";
        if (inst) {
            std::cout << "instance: p=" << inst->p << " order=" << inst->order
                      << " mu=" << inst->mu << " period-model="
                      << pg::period_model_name(inst->period_model) << "\n";
        }
        for (const auto& line : human_lines) std::cout << line << "\n";
    }
}

int run_instance(const InstanceFlags& flags, const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    Json payload = pg::instance_to_json(inst);

    std::vector<std::string> csv{"period,coefficient"};
    for (const auto& [m, c] : inst.coefficients)
        csv.push_back(std::to_string(m) + "," + std::to_string(c));

    std::vector<std::string> human;
    std::string periods = "periods:";
    for (int64_t m : inst.periods) periods += " " + std::to_string(m);
    human.push_back(periods);
    std::string coeffs = "coefficients:";
    for (const auto& [m, c] : inst.coefficients)
        coeffs += " c" + std::to_string(m) + "=" + std::to_string(c);
    human.push_back(coeffs);
    if (inst.exceptions.empty()) {
        human.push_back("exceptions: none");
    } else {
        std::string ex = "exceptions:";
        for (const auto& sig : inst.exceptions) ex += " " + sig.human();
        human.push_back(ex);
    }
    emit(out, "instance", &inst, payload, csv, human);
    return 0;
}

int run_stable(const InstanceFlags& flags, const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    pg::SpectrumEngine engine = make_engine(std::move(inst), false);
    pg::StableResult result = engine.stable_upper_genus();

    Json payload = pg::stable_to_json(result);
    std::vector<std::string> csv{
        "p,sigma,frobenius,run_length,gap_at_prev,clamped_to_mu",
        std::to_string(engine.instance().p) + "," +
            std::to_string(result.sigma) + "," +
            std::to_string(result.frobenius) + "," +
            std::to_string(result.run_length) + "," +
            (result.gap_at_prev ? "true" : "false") + "," +
            (result.clamped_to_mu ? "true" : "false")};
    std::vector<std::string> human{
        "stable upper genus: " + std::to_string(result.sigma),
        "frobenius number:   " + std::to_string(result.frobenius),
        "verified: " + std::to_string(result.run_length) +
            " consecutive members from " + std::to_string(result.sigma) +
            (result.gap_at_prev
                 ? "; gap at " + std::to_string(result.sigma - 1)
                 : "; clamped to mu (no predecessor gap check)")};
    emit(out, "stable", &engine.instance(), payload, csv, human);
    return 0;
}

int run_min_genus(const InstanceFlags& flags, const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    pg::SpectrumEngine engine = make_engine(std::move(inst), true);
    int64_t g = engine.min_genus();
    auto w = engine.witness(g);

    Json payload{{"min_genus", g}, {"witness", w->wire()}};
    std::vector<std::string> csv{"p,min_genus,witness",
                                 std::to_string(engine.instance().p) + "," +
                                     std::to_string(g) + "," +
                                     pg::csv_field(w->wire())};
    std::vector<std::string> human{"minimum genus: " + std::to_string(g),
                                   "witness: " + w->human()};
    emit(out, "min-genus", &engine.instance(), payload, csv, human);
    return 0;
}

int run_spectrum(const InstanceFlags& flags, int64_t lo, int64_t hi,
                 int64_t cap, bool oracle, const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    pg::SpectrumEngine engine = make_engine(std::move(inst), !oracle);
    pg::SpectrumWindow window = engine.window(lo, hi, cap);

    bool oracle_agrees = true;
    if (oracle) {
        auto brute = pg::enumerate_genera(
            engine.instance(), pg::derive_bounds(engine.instance(), hi),
            std::max(lo, engine.instance().mu), hi);
        for (const auto& entry : window.members)
            if (!brute.count(entry.genus)) oracle_agrees = false;
        for (int64_t g : window.gaps)
            if (brute.count(g)) oracle_agrees = false;
        if (static_cast<int64_t>(brute.size()) !=
            static_cast<int64_t>(window.members.size()))
            oracle_agrees = false;
        if (!oracle_agrees)
            pg::raise(pg::ErrorKind::invariant_violation,
                      "engine and brute-force oracle disagree on the window");
    }

    Json payload = pg::window_to_json(window);
    if (oracle) payload["oracle_agrees"] = oracle_agrees;

    std::vector<std::string> csv{"genus,is_member,witness"};
    {
        size_t mi = 0, gi = 0;
        while (mi < window.members.size() || gi < window.gaps.size()) {
            bool take_member =
                gi >= window.gaps.size() ||
                (mi < window.members.size() &&
                 window.members[mi].genus < window.gaps[gi]);
            if (take_member) {
                csv.push_back(std::to_string(window.members[mi].genus) +
                              ",true," +
                              pg::csv_field(window.members[mi].witness.wire()));
                ++mi;
            } else {
                csv.push_back(std::to_string(window.gaps[gi]) + ",false,");
                ++gi;
            }
        }
    }

    std::vector<std::string> human{
        "window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " +
        std::to_string(window.members.size()) + " members, " +
        std::to_string(window.gaps.size()) + " gaps"};
    for (const auto& entry : window.members)
        human.push_back("  " + std::to_string(entry.genus) + "  " +
                        entry.witness.human());
    if (!window.gaps.empty()) {
        std::string gaps = "gaps:";
        for (int64_t g : window.gaps) gaps += " " + std::to_string(g);
        human.push_back(gaps);
    }
    if (oracle) human.push_back("oracle: agrees with engine");
    emit(out, "spectrum", &engine.instance(), payload, csv, human);
    return 0;
}

int run_witness(const InstanceFlags& flags, int64_t g,
                const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    pg::SpectrumEngine engine = make_engine(std::move(inst), true);
    auto w = engine.witness(g);

    Json payload{{"genus", g},
                 {"member", w.has_value()},
                 {"witness", w ? Json(w->wire()) : Json(nullptr)}};
    std::vector<std::string> csv{
        "genus,is_member,witness",
        std::to_string(g) + "," + (w ? "true," + pg::csv_field(w->wire())
                                     : std::string("false,"))};
    std::vector<std::string> human;
    if (w) {
        human.push_back(w->wire());
        human.push_back("signature: " + w->human());
    } else {
        human.push_back("genus " + std::to_string(g) +
                        " is not in the spectrum");
    }
    emit(out, "witness", &engine.instance(), payload, csv, human);
    return 0;
}

int run_verify_absent(const InstanceFlags& flags, int64_t g, bool oracle,
                      bool archival, int64_t cap, const OutputOptions& out) {
    pg::GroupInstance inst = build_instance(flags);
    pg::SpectrumEngine engine = make_engine(std::move(inst), false);
    bool engine_absent = !engine.genus_member(g);

    Json oracle_json(nullptr);
    bool oracle_checked = false, oracle_agrees = true;
    if (oracle || archival) {
        oracle_checked = true;
        pg::Bounds bounds = archival
                                ? pg::archival_bounds(engine.instance(), 1)
                                : pg::derive_bounds(engine.instance(), g);
        bool oracle_absent =
            !pg::brute_member(engine.instance(), bounds, g, cap);
        oracle_agrees = oracle_absent == engine_absent;
        oracle_json = Json{{"absent", oracle_absent},
                           {"bounds", pg::bounds_to_json(bounds)},
                           {"mode", archival ? "archival" : "derived"},
                           {"agrees", oracle_agrees}};
        if (!oracle_agrees)
            pg::raise(pg::ErrorKind::invariant_violation,
                      "engine and brute-force oracle disagree at genus " +
                          std::to_string(g));
    }

    Json payload{{"genus", g}, {"absent", engine_absent},
                 {"oracle", oracle_json}};
    if (!engine_absent) payload["witness"] = engine.witness(g)->wire();

    std::vector<std::string> csv{
        "genus,absent,oracle_checked,oracle_agrees",
        std::to_string(g) + "," + (engine_absent ? "true" : "false") + "," +
            (oracle_checked ? "true" : "false") + "," +
            (oracle_checked ? (oracle_agrees ? "true" : "false") : "")};
    std::vector<std::string> human;
    std::string verdict = engine_absent ? "absent" : "present";
    if (oracle_checked) verdict += ", oracle agrees";
    human.push_back("genus " + std::to_string(g) + ": " + verdict);
    if (!engine_absent)
        human.push_back("witness: " + engine.witness(g)->human());
    emit(out, "verify-absent", &engine.instance(), payload, csv, human);
    return 0;
}

std::vector<pg::DataPoint> load_points(const std::string& source) {
    if (source.empty() || source == "builtin") return pg::reference_dataset();
    return pg::read_points_csv(source);
}

std::vector<std::string> residual_csv(const std::vector<pg::PredictionRow>& rows) {
    std::vector<std::string> csv{"p,observed,fitted,residual"};
    for (const auto& row : rows) {
        std::string observed =
            row.observed ? std::to_string(*row.observed) : "";
        std::string residual =
            row.rel_residual ? format_double(*row.rel_residual) : "";
        csv.push_back(std::to_string(row.p) + "," + observed + "," +
                      format_double(row.fitted) + "," + residual);
    }
    return csv;
}

std::vector<std::string> residual_human(const std::vector<pg::PredictionRow>& rows) {
    std::vector<std::string> human{"  p  observed      fitted         residual"};
    for (const auto& row : rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%3lld  %-12s  %-13.6g  %s",
                      static_cast<long long>(row.p),
                      row.observed ? std::to_string(*row.observed).c_str()
                                   : "-",
                      row.fitted,
                      row.rel_residual ? format_double(*row.rel_residual).c_str()
                                       : "-");
        human.emplace_back(buf);
    }
    return human;
}

int run_fit(const std::string& points_source, const std::string& preset,
            std::optional<double> fix_b, std::optional<double> fix_c,
            const OutputOptions& out) {
    std::vector<pg::DataPoint> points = load_points(points_source);
    pg::FitModel model;
    if (!preset.empty()) {
        if (fix_b || fix_c)
            pg::raise(pg::ErrorKind::config,
                      "--preset cannot be combined with --fix-b/--fix-c");
        model = pg::preset_model(preset);
    } else {
        model = pg::fit_loglinear(points, {fix_b, fix_c});
    }
    auto rows = pg::residual_table(model, points);

    Json payload{{"model", pg::fit_model_to_json(model)},
                 {"preset", preset.empty() ? Json(nullptr) : Json(preset)},
                 {"points_source",
                  points_source.empty() ? "builtin" : points_source},
                 {"residual_table", pg::prediction_rows_to_json(rows)}};
    std::vector<std::string> human{
        "model: a=" + format_double(model.a) + " b=" + format_double(model.b) +
        " c=" + format_double(model.c)};
    auto table = residual_human(rows);
    human.insert(human.end(), table.begin(), table.end());
    emit(out, "fit", nullptr, payload, residual_csv(rows), human);
    return 0;
}

int run_predict(int64_t p, const std::string& model_json,
                const std::string& model_file, const std::string& preset,
                const OutputOptions& out) {
    pg::FitModel model;
    int sources = (!model_json.empty()) + (!model_file.empty()) +
                  (!preset.empty());
    if (sources != 1)
        pg::raise(pg::ErrorKind::config,
                  "predict needs exactly one of --model, --model-file, "
                  "--preset");
    if (!preset.empty()) {
        model = pg::preset_model(preset);
    } else {
        try {
            nlohmann::json j =
                model_json.empty()
                    ? nlohmann::json::parse(std::ifstream(model_file))
                    : nlohmann::json::parse(model_json);
            model = pg::fit_model_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            pg::raise(pg::ErrorKind::config,
                      "bad model JSON: " + std::string(e.what()));
        }
    }
    auto rows = pg::residual_table(model, {}, {p});
    Json payload{{"model", pg::fit_model_to_json(model)},
                 {"p", p},
                 {"fitted", rows[0].fitted},
                 {"fitted_rounded", rows[0].fitted_rounded}};
    std::vector<std::string> human{
        "p = " + std::to_string(p) + ": fitted " + format_double(rows[0].fitted) +
        " (rounded " + std::to_string(rows[0].fitted_rounded) + ")"};
    emit(out, "predict", nullptr, payload, residual_csv(rows), human);
    return 0;
}

struct SelfCheck {
    std::string name;
    bool ok;
    std::string detail;
};

int run_selftest(const OutputOptions& out) {
    std::vector<SelfCheck> checks;
    auto record = [&](const std::string& name, bool ok,
                      const std::string& detail) {
        checks.push_back({name, ok, detail});
    };

    {
        int64_t f = pg::frobenius_number({6, 9, 20});
        record("frobenius-fixture-{6,9,20}", f == 43,
               "frobenius = " + std::to_string(f));
    }

    // Engine vs paper-faithful bounded enumeration on small windows.
    for (auto [p, hi] : {std::pair<int64_t, int64_t>{7, 300}, {11, 800}}) {
        pg::GroupInstance inst = pg::load_instance(p);
        pg::SpectrumEngine engine{inst};
        auto brute =
            pg::enumerate_genera(inst, pg::derive_bounds(inst, hi), 0, hi);
        bool ok = true;
        for (int64_t g = 0; g <= hi; ++g)
            if (engine.genus_member(g) != (brute.count(g) > 0)) ok = false;
        record("oracle-equivalence-p" + std::to_string(p) + "-[0," +
                   std::to_string(hi) + "]",
               ok, ok ? "pointwise equal" : "MISMATCH");
    }

    // Stable upper genus for the supported primes; the engine's internal
    // c2-run + predecessor-gap verification raises on any inconsistency.
    Json reference_rows = Json::array();
    for (const auto& point : pg::reference_dataset()) {
        pg::GroupInstance inst = pg::load_instance(point.p);
        pg::SpectrumEngine engine{inst};
        pg::StableResult result = engine.stable_upper_genus();
        bool matches = result.sigma == point.g;
        reference_rows.push_back(Json{{"p", point.p},
                                      {"computed", result.sigma},
                                      {"reference", point.g},
                                      {"matches", matches}});
        record("stable-verified-p" + std::to_string(point.p), true,
               "sigma = " + std::to_string(result.sigma) +
                   (matches ? " (matches reference)"
                            : " (reference lists " + std::to_string(point.g) +
                                  ")"));
    }

    // p = 23 is the one prime where the two period models differ; compute
    // both and report which (if either) matches the bundled reference value.
    {
        pg::InstanceOverrides lemma3;
        lemma3.period_model = pg::PeriodModel::lemma3;
        int64_t sigma_all =
            pg::SpectrumEngine{pg::load_instance(23)}.stable_upper_genus().sigma;
        int64_t sigma_l3 = pg::SpectrumEngine{pg::load_instance(23, lemma3)}
                               .stable_upper_genus()
                               .sigma;
        std::string match = "neither";
        if (sigma_all == 297084) match = "all-divisors";
        else if (sigma_l3 == 297084) match = "lemma3";
        record("p23-period-models", true,
               "all-divisors sigma = " + std::to_string(sigma_all) +
                   ", lemma3 sigma = " + std::to_string(sigma_l3) +
                   "; reference 297084 matched by: " + match +
                   "; pinned default: all-divisors");
    }

    // Witness soundness + exception neutrality at p = 7.
    {
        pg::GroupInstance inst = pg::load_instance(7);
        pg::SpectrumEngine engine{inst};
        bool ok = true;
        for (int64_t g = 0; g <= 600; ++g) {
            if (!engine.genus_member(g)) continue;
            auto w = engine.witness(g);
            if (!w || pg::rh_genus(inst, *w) != g || !pg::is_admissible(inst, *w))
                ok = false;
        }
        record("witness-soundness-p7-[0,600]", ok,
               ok ? "rh_genus and admissibility hold for every witness"
                  : "MISMATCH");
        auto w43 = engine.witness(43);
        bool neutral = w43 && w43->h == 0 && pg::is_admissible(inst, *w43);
        record("exception-neutrality-p7-genus-43", neutral,
               neutral ? "witness " + w43->wire() : "no admissible witness");
    }

    bool all_ok = true;
    for (const auto& check : checks) all_ok = all_ok && check.ok;

    Json check_rows = Json::array();
    for (const auto& check : checks)
        check_rows.push_back(Json{{"name", check.name},
                                  {"ok", check.ok},
                                  {"detail", check.detail}});
    Json payload{{"ok", all_ok},
                 {"checks", check_rows},
                 {"reference_comparison", reference_rows},
                 {"pinned_p23_model", "all-divisors"}};

    std::vector<std::string> csv{"check,ok,detail"};
    for (const auto& check : checks)
        csv.push_back(pg::csv_field(check.name) + "," +
                      (check.ok ? "true" : "false") + "," +
                      pg::csv_field(check.detail));
    std::vector<std::string> human;
    for (const auto& check : checks)
        human.push_back(std::string(check.ok ? "ok   " : "FAIL ") + check.name +
                        ": " + check.detail);
    human.push_back(all_ok ? "selftest: all internal checks passed"
                           : "selftest: FAILURES above");
    emit(out, "selftest", nullptr, payload, csv, human);
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact genus spectra, stable upper genus and scaling fits for "
        "PSL2(F_p), p ≡ 3 (mod 4)"};
    app.require_subcommand(1);

    InstanceFlags inst_flags[6];
    OutputOptions out_opts[9];

    auto* cmd_instance = app.add_subcommand("instance", "Show a group instance");
    add_instance_flags(cmd_instance, inst_flags[0]);
    add_format_flag(cmd_instance, out_opts[0]);

    auto* cmd_stable =
        app.add_subcommand("stable", "Stable upper genus with verification");
    add_instance_flags(cmd_stable, inst_flags[1]);
    add_format_flag(cmd_stable, out_opts[1]);

    auto* cmd_min = app.add_subcommand("min-genus", "Minimum spectrum genus");
    add_instance_flags(cmd_min, inst_flags[2]);
    add_format_flag(cmd_min, out_opts[2]);

    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "Members, gaps and witnesses of a window");
    add_instance_flags(cmd_spectrum, inst_flags[3]);
    add_format_flag(cmd_spectrum, out_opts[3]);
    int64_t spec_lo = 0, spec_hi = 0, spec_cap = pg::kDefaultWindowCap;
    bool spec_oracle = false;
    cmd_spectrum->add_option("--from", spec_lo, "Window lower bound")
        ->required();
    cmd_spectrum->add_option("--to", spec_hi, "Window upper bound")->required();
    cmd_spectrum->add_option("--cap", spec_cap, "Window size cap");
    cmd_spectrum->add_flag("--oracle", spec_oracle,
                           "Cross-check against the bounded enumeration");

    auto* cmd_witness = app.add_subcommand("witness", "Signature for a genus");
    add_instance_flags(cmd_witness, inst_flags[4]);
    add_format_flag(cmd_witness, out_opts[4]);
    int64_t witness_g = 0;
    cmd_witness->add_option("-g,--genus", witness_g, "Genus value")->required();

    auto* cmd_absent = app.add_subcommand(
        "verify-absent", "Check that a genus is not in the spectrum");
    add_instance_flags(cmd_absent, inst_flags[5]);
    add_format_flag(cmd_absent, out_opts[5]);
    int64_t absent_g = 0, absent_cap = pg::kDefaultGridCap;
    bool absent_oracle = false, absent_archival = false;
    cmd_absent->add_option("-g,--genus", absent_g, "Genus value")->required();
    cmd_absent->add_flag("--oracle", absent_oracle,
                         "Cross-check with the bounded enumeration");
    cmd_absent->add_flag("--paper-bounds", absent_archival,
                         "Use the originally published p=19 grid");
    cmd_absent->add_option("--cap", absent_cap, "Enumeration grid cap");

    auto* cmd_fit = app.add_subcommand("fit", "Fit g = a p^b e^{cp}");
    add_format_flag(cmd_fit, out_opts[6]);
    std::string fit_points, fit_preset;
    std::optional<double> fit_fix_b, fit_fix_c;
    cmd_fit->add_option("--points", fit_points,
                        "Points CSV file, or 'builtin'");
    cmd_fit->add_option("--preset", fit_preset,
                        "paper-low | paper-high (skip fitting)");
    cmd_fit->add_option_function<double>(
        "--fix-b", [&fit_fix_b](const double& v) { fit_fix_b = v; },
        "Hold b fixed");
    cmd_fit->add_option_function<double>(
        "--fix-c", [&fit_fix_c](const double& v) { fit_fix_c = v; },
        "Hold c fixed");

    auto* cmd_predict = app.add_subcommand("predict", "Evaluate a model at p");
    add_format_flag(cmd_predict, out_opts[7]);
    int64_t predict_p = 0;
    std::string predict_model, predict_model_file, predict_preset;
    cmd_predict->add_option("-p,--prime", predict_p, "Evaluation point")
        ->required();
    cmd_predict->add_option("--model", predict_model,
                            "Inline model JSON {\"a\":..,\"b\":..,\"c\":..}");
    cmd_predict->add_option("--model-file", predict_model_file,
                            "Model JSON file");
    cmd_predict->add_option("--preset", predict_preset,
                            "paper-low | paper-high");

    auto* cmd_selftest =
        app.add_subcommand("selftest", "Run the built-in consistency checks");
    add_format_flag(cmd_selftest, out_opts[8]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_instance) return run_instance(inst_flags[0], out_opts[0]);
        if (*cmd_stable) return run_stable(inst_flags[1], out_opts[1]);
        if (*cmd_min) return run_min_genus(inst_flags[2], out_opts[2]);
        if (*cmd_spectrum)
            return run_spectrum(inst_flags[3], spec_lo, spec_hi, spec_cap,
                                spec_oracle, out_opts[3]);
        if (*cmd_witness)
            return run_witness(inst_flags[4], witness_g, out_opts[4]);
        if (*cmd_absent)
            return run_verify_absent(inst_flags[5], absent_g, absent_oracle,
                                     absent_archival, absent_cap, out_opts[5]);
        if (*cmd_fit)
            return run_fit(fit_points, fit_preset, fit_fix_b, fit_fix_c,
                           out_opts[6]);
        if (*cmd_predict)
            return run_predict(predict_p, predict_model, predict_model_file,
                               predict_preset, out_opts[7]);
        if (*cmd_selftest) return run_selftest(out_opts[8]);
    } catch (const pg::Error& e) {
        std::cerr << "error (" << pg::error_kind_name(e.kind()) << "): "
                  << e.what() << "\n";
        switch (e.kind()) {
            case pg::ErrorKind::invariant_violation: return 3;
            case pg::ErrorKind::resource_cap: return 4;
            default: return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
