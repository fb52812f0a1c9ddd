#include "psl2genus/io.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace psl2genus {

namespace fs = std::filesystem;

Json signature_to_json(const Signature& sig) {
    Json counts = Json::object();
    for (const auto& [m, a] : sig.counts)
        if (a != 0) counts[std::to_string(m)] = a;
    return Json{{"h", sig.h}, {"counts", counts}};
}

Signature signature_from_json(const nlohmann::json& j) {
    Signature sig;
    sig.h = j.at("h").get<int64_t>();
    if (j.contains("counts"))
        for (const auto& [key, value] : j.at("counts").items())
            sig.counts[std::stoll(key)] = value.get<int64_t>();
    return sig;
}

Json instance_summary_json(const GroupInstance& instance) {
    return Json{{"p", instance.p},
                {"order", instance.order},
                {"periods", instance.periods},
                {"mu", instance.mu},
                {"period_model", period_model_name(instance.period_model)}};
}

Json instance_to_json(const GroupInstance& instance) {
    Json j = instance_summary_json(instance);
    Json coeffs = Json::object();
    for (const auto& [m, c] : instance.coefficients)
        coeffs[std::to_string(m)] = c;
    j["coefficients"] = coeffs;
    Json exceptions = Json::array();
    for (const auto& ex : instance.exceptions)
        exceptions.push_back(signature_to_json(ex));
    j["exceptions"] = exceptions;
    return j;
}

InstanceOverrides overrides_from_json(const nlohmann::json& j) {
    InstanceOverrides overrides;
    if (j.contains("periods"))
        overrides.periods = j.at("periods").get<std::vector<int64_t>>();
    if (j.contains("mu")) overrides.mu = j.at("mu").get<int64_t>();
    if (j.contains("period_model"))
        overrides.period_model =
            period_model_from_name(j.at("period_model").get<std::string>());
    if (j.contains("exceptions")) {
        std::vector<Signature> exceptions;
        for (const auto& item : j.at("exceptions"))
            exceptions.push_back(signature_from_json(item));
        overrides.exceptions = std::move(exceptions);
    }
    return overrides;
}

std::optional<int64_t> config_prime(const nlohmann::json& j) {
    if (j.contains("p")) return j.at("p").get<int64_t>();
    return std::nullopt;
}

Json fit_model_to_json(const FitModel& model) {
    return Json{{"a", model.a}, {"b", model.b}, {"c", model.c}};
}

FitModel fit_model_from_json(const nlohmann::json& j) {
    FitModel model;
    model.a = j.at("a").get<double>();
    model.b = j.at("b").get<double>();
    model.c = j.at("c").get<double>();
    if (model.a <= 0) raise(ErrorKind::config, "model requires a > 0");
    return model;
}

Json window_to_json(const SpectrumWindow& window) {
    Json members = Json::array();
    for (const auto& entry : window.members)
        members.push_back(
            Json{{"genus", entry.genus}, {"witness", entry.witness.wire()}});
    return Json{{"lo", window.lo},
                {"hi", window.hi},
                {"member_count", static_cast<int64_t>(window.members.size())},
                {"gap_count", static_cast<int64_t>(window.gaps.size())},
                {"members", members},
                {"gaps", window.gaps}};
}

Json stable_to_json(const StableResult& result) {
    return Json{{"sigma", result.sigma},
                {"frobenius", result.frobenius},
                {"run_length", result.run_length},
                {"gap_at_prev", result.gap_at_prev},
                {"clamped_to_mu", result.clamped_to_mu}};
}

Json bounds_to_json(const Bounds& bounds) {
    Json a_max = Json::object();
    for (const auto& [m, a] : bounds.a_max) a_max[std::to_string(m)] = a;
    return Json{{"h_max", bounds.h_max}, {"a_max", a_max}};
}

Json prediction_rows_to_json(const std::vector<PredictionRow>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json j{{"p", row.p},
               {"observed", nullptr},
               {"fitted", row.fitted},
               {"fitted_rounded", row.fitted_rounded},
               {"rel_residual", nullptr}};
        if (row.observed) j["observed"] = *row.observed;
        if (row.rel_residual) j["rel_residual"] = *row.rel_residual;
        out.push_back(j);
    }
    return out;
}

std::vector<DataPoint> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::config, "cannot open points file " + path);
    std::vector<DataPoint> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line.find_first_not_of("pg, \t") == std::string::npos) {
            first = false;
            continue;  // header row
        }
        first = false;
        std::istringstream row(line);
        std::string p_field, g_field;
        if (!std::getline(row, p_field, ',') || !std::getline(row, g_field))
            raise(ErrorKind::config, "expected 'p,g' row, got '" + line + "'");
        try {
            points.push_back({std::stoll(p_field), std::stoll(g_field)});
        } catch (const std::exception&) {
            raise(ErrorKind::config, "non-integer row '" + line + "'");
        }
    }
    if (points.empty())
        raise(ErrorKind::config, "points file " + path + " has no data rows");
    return points;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char ch : value) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

static uint64_t fnv1a(const std::string& data) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : data) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string cache_file_name(const GroupInstance& instance) {
    std::string key = std::to_string(instance.p) + "|" +
                      period_model_name(instance.period_model);
    for (const auto& [m, c] : instance.coefficients)
        key += "|" + std::to_string(c);
    std::ostringstream name;
    name << "apery-p" << instance.p << "-"
         << period_model_name(instance.period_model) << "-" << std::hex
         << fnv1a(key) << ".json";
    return name.str();
}

static bool table_is_consistent(const AperyTable& table) {
    int64_t n0 = table.modulus;
    if (table.generators.empty() || table.generators.front() != n0) return false;
    if (static_cast<int64_t>(table.least_member.size()) != n0 ||
        static_cast<int64_t>(table.back_pointer.size()) != n0)
        return false;
    if (table.least_member[0] != 0 || table.back_pointer[0] != 0) return false;
    for (int64_t r = 0; r < n0; ++r) {
        int64_t v = table.least_member[static_cast<size_t>(r)];
        if (v < 0 || v % n0 != r) return false;
        // Bellman optimality: no generator edge improves any residue.
        for (int64_t g : table.generators)
            if (v + g < table.least_member[static_cast<size_t>((r + g) % n0)])
                return false;
        if (r != 0) {
            int64_t g = table.back_pointer[static_cast<size_t>(r)];
            if (std::find(table.generators.begin(), table.generators.end(),
                          g) == table.generators.end())
                return false;
            if (v - g < 0 ||
                table.least_member[static_cast<size_t>(((r - g) % n0 + n0) %
                                                       n0)] != v - g)
                return false;
        }
    }
    return true;
}

std::optional<AperyTable> load_cached_table(const std::string& dir,
                                            const GroupInstance& instance) {
    fs::path path = fs::path(dir) / cache_file_name(instance);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    AperyTable table;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        table.generators = j.at("generators").get<std::vector<int64_t>>();
        table.modulus = j.at("modulus").get<int64_t>();
        table.least_member = j.at("least_member").get<std::vector<int64_t>>();
        table.back_pointer = j.at("back_pointer").get<std::vector<int64_t>>();
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::vector<int64_t> expected;
    for (const auto& [m, c] : instance.coefficients) expected.push_back(c);
    if (table.generators != expected) return std::nullopt;
    if (!table_is_consistent(table)) return std::nullopt;
    return table;
}

bool store_cached_table(const std::string& dir, const GroupInstance& instance,
                        const AperyTable& table) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path path = fs::path(dir) / cache_file_name(instance);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return false;
        Json j{{"generators", table.generators},
               {"modulus", table.modulus},
               {"least_member", table.least_member},
               {"back_pointer", table.back_pointer}};
        out << j.dump();
    }
    fs::rename(tmp, path, ec);
    return !ec;
}

}  // namespace psl2genus
