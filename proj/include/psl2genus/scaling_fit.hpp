#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psl2genus {

/// Parameters of the scaling law g = a * p^b * exp(c*p).
struct FitModel {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
};

struct DataPoint {
    int64_t p = 0;
    int64_t g = 0;
};

struct PredictionRow {
    int64_t p = 0;
    std::optional<int64_t> observed;
    double fitted = 0.0;
    int64_t fitted_rounded = 0;           // round half away from zero
    std::optional<double> rel_residual;   // |fitted - observed| / observed
};

/// a * p^b * exp(c*p), computed in log space; raises overflow when the
/// exponent leaves double range.
double evaluate(const FitModel& model, int64_t p);

struct FixedParams {
    std::optional<double> b;
    std::optional<double> c;
};

/// Least squares for ln g = ln a + b ln p + c p over the free parameters
/// (a is always free). Deterministic; rank deficiency raises degenerate-fit.
FitModel fit_loglinear(const std::vector<DataPoint>& points,
                       const FixedParams& fixed = {});

std::vector<PredictionRow> residual_table(
    const FitModel& model, const std::vector<DataPoint>& points,
    const std::vector<int64_t>& predict_only = {});

/// Bundled reference observations the fitting presets were tuned against.
const std::vector<DataPoint>& reference_dataset();

/// "paper-low" -> {4.5, 0.5, 0.5} (p in {7,11});
/// "paper-high" -> {0.5, 0.5, 0.51} (p in {19,23,31}).
FitModel preset_model(const std::string& name);

}  // namespace psl2genus
