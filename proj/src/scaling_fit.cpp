#include "psl2genus/scaling_fit.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "psl2genus/errors.hpp"

namespace psl2genus {

double evaluate(const FitModel& model, int64_t p) {
    if (model.a <= 0.0) raise(ErrorKind::config, "model requires a > 0");
    if (p < 1) raise(ErrorKind::config, "evaluate requires p >= 1");
    double logv = std::log(model.a) + model.b * std::log(double(p)) +
                  model.c * double(p);
    if (logv > 700.0)
        raise(ErrorKind::overflow,
              "evaluation overflows double range at p = " + std::to_string(p));
    return std::exp(logv);
}

FitModel fit_loglinear(const std::vector<DataPoint>& points,
                       const FixedParams& fixed) {
    const bool free_b = !fixed.b.has_value();
    const bool free_c = !fixed.c.has_value();
    const Eigen::Index k = 1 + (free_b ? 1 : 0) + (free_c ? 1 : 0);
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    if (n < k)
        raise(ErrorKind::degenerate_fit,
              std::to_string(k) + " free parameters need at least " +
                  std::to_string(k) + " points, got " + std::to_string(n));

    Eigen::MatrixXd design(n, k);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& pt = points[static_cast<size_t>(i)];
        if (pt.p < 1 || pt.g < 1)
            raise(ErrorKind::config, "data points require p >= 1 and g >= 1");
        double lp = std::log(double(pt.p));
        Eigen::Index col = 0;
        design(i, col++) = 1.0;
        if (free_b) design(i, col++) = lp;
        if (free_c) design(i, col++) = double(pt.p);
        rhs(i) = std::log(double(pt.g)) - (free_b ? 0.0 : *fixed.b * lp) -
                 (free_c ? 0.0 : *fixed.c * double(pt.p));
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < k)
        raise(ErrorKind::degenerate_fit, "design matrix is rank deficient");
    Eigen::VectorXd sol = qr.solve(rhs);

    FitModel model;
    Eigen::Index col = 0;
    model.a = std::exp(sol(col++));
    model.b = free_b ? sol(col++) : *fixed.b;
    model.c = free_c ? sol(col++) : *fixed.c;
    return model;
}

static int64_t round_half_away(double v) {
    if (!(std::abs(v) < 9.2e18))
        raise(ErrorKind::overflow, "rounded value exceeds 64-bit range");
    return std::llround(v);
}

std::vector<PredictionRow> residual_table(
    const FitModel& model, const std::vector<DataPoint>& points,
    const std::vector<int64_t>& predict_only) {
    std::vector<PredictionRow> rows;
    rows.reserve(points.size() + predict_only.size());
    for (const auto& pt : points) {
        PredictionRow row;
        row.p = pt.p;
        row.observed = pt.g;
        row.fitted = evaluate(model, pt.p);
        row.fitted_rounded = round_half_away(row.fitted);
        row.rel_residual = std::abs(row.fitted - double(pt.g)) / double(pt.g);
        rows.push_back(row);
    }
    for (int64_t p : predict_only) {
        PredictionRow row;
        row.p = p;
        row.fitted = evaluate(model, p);
        row.fitted_rounded = round_half_away(row.fitted);
        rows.push_back(row);
    }
    return rows;
}

const std::vector<DataPoint>& reference_dataset() {
    static const std::vector<DataPoint> data = {
        {7, 399}, {11, 3508}, {19, 33112}, {23, 297084}, {31, 20275804}};
    return data;
}

FitModel preset_model(const std::string& name) {
    if (name == "paper-low") return {4.5, 0.5, 0.5};
    if (name == "paper-high") return {0.5, 0.5, 0.51};
    raise(ErrorKind::config,
          "unknown preset '" + name + "' (expected paper-low or paper-high)");
}

}  // namespace psl2genus
