#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psl2genus/brute_oracle.hpp"
#include "psl2genus/scaling_fit.hpp"
#include "psl2genus/semigroup_engine.hpp"

namespace psl2genus {

// Key-order-preserving JSON so identical commands emit identical bytes.
using Json = nlohmann::ordered_json;

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const nlohmann::json& j);

Json instance_summary_json(const GroupInstance& instance);
Json instance_to_json(const GroupInstance& instance);

/// Instance config file: {"p", "periods", "mu", "exceptions", "period_model"};
/// omitted fields are derived by load_instance.
InstanceOverrides overrides_from_json(const nlohmann::json& j);
std::optional<int64_t> config_prime(const nlohmann::json& j);

Json fit_model_to_json(const FitModel& model);
FitModel fit_model_from_json(const nlohmann::json& j);

Json window_to_json(const SpectrumWindow& window);
Json stable_to_json(const StableResult& result);
Json bounds_to_json(const Bounds& bounds);
Json prediction_rows_to_json(const std::vector<PredictionRow>& rows);

/// "p,g" rows, optional header line.
std::vector<DataPoint> read_points_csv(const std::string& path);

std::string csv_field(const std::string& value);  // RFC-4180 quoting

// Apéry table disk cache (pure performance layer; verification paths always
// recompute). Loads are validated against the instance's coefficients and
// the table's Bellman optimality; any mismatch falls back to recomputation.
std::string cache_file_name(const GroupInstance& instance);
std::optional<AperyTable> load_cached_table(const std::string& dir,
                                            const GroupInstance& instance);
bool store_cached_table(const std::string& dir, const GroupInstance& instance,
                        const AperyTable& table);

}  // namespace psl2genus
