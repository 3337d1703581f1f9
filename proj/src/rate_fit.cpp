#include "blowlab/rate_fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

struct Regression {
    double log_amplitude = 0.0;
    double alpha = 0.0;
    double sse = 0.0;
};

// For a fixed blow-up candidate T the model log y = log A - alpha log(T - t)
// is linear; slope and intercept are closed-form least squares.
Regression regress(const std::vector<std::pair<double, double>>& series,
                   const std::vector<double>& log_y, double t_candidate) {
    const std::size_t n = series.size();
    double mean_x = 0.0, mean_ly = 0.0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(t_candidate - series[i].first);
        mean_x += x[i];
        mean_ly += log_y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_ly /= static_cast<double>(n);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mean_x) * (log_y[i] - mean_ly);
        var += (x[i] - mean_x) * (x[i] - mean_x);
    }
    Regression r;
    r.alpha = -cov / var;
    r.log_amplitude = mean_ly + r.alpha * mean_x;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = log_y[i] - (r.log_amplitude - r.alpha * x[i]);
        r.sse += resid * resid;
    }
    return r;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& series) {
    const std::size_t n = series.size();
    if (n < 8) throw std::invalid_argument("fit: need at least 8 samples");
    std::vector<double> log_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(series[i].first > series[i - 1].first))
            throw std::invalid_argument("fit: times must strictly increase");
        if (!(series[i].second > 0.0))
            throw std::invalid_argument("fit: values must be positive");
        log_y[i] = std::log(series[i].second);
    }

    const double t_last = series.back().first;
    const double range = t_last - series.front().first;
    auto sse_at = [&](double t_candidate) {
        return regress(series, log_y, t_candidate).sse;
    };

    // Coarse log-spaced scan of the offset T - t_last, dense near t_last
    // where the misfit varies fastest, then golden-section refinement.
    const int coarse = 600;
    const double d_min = 1e-8 * range;
    const double d_max = 10.0 * range;
    const double ratio = std::log(d_max / d_min) / (coarse - 1);
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k < coarse; ++k) {
        const double t_cand = t_last + d_min * std::exp(ratio * k);
        const double s = sse_at(t_cand);
        if (s < best_sse) {
            best_sse = s;
            best = k;
        }
    }
    double lo = t_last + d_min * std::exp(ratio * std::max(0, best - 1));
    double hi = t_last + d_min * std::exp(ratio * std::min(coarse - 1, best + 1));

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = 1e-12 * std::max(1.0, std::abs(hi));
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = sse_at(x1);
    double f2 = sse_at(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sse_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sse_at(x2);
        }
    }
    const double t_blowup = 0.5 * (lo + hi);
    const Regression r = regress(series, log_y, t_blowup);

    PowerLawFit fit;
    fit.t_blowup = t_blowup;
    fit.alpha = r.alpha;
    fit.amplitude = std::exp(r.log_amplitude);
    fit.residual = std::sqrt(r.sse / static_cast<double>(n));
    return fit;
}

namespace {

double param(const BoundSpec& spec, const std::string& key, double fallback) {
    auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

bool log_corrected(const std::string& id) { return id == "eq5" || id == "eq7"; }

}  // namespace

const std::vector<std::string>& bound_catalog() {
    static const std::vector<std::string> ids = {
        "eq2",  "eq3",  "eq4",  "eq5",   "eq6",   "eq7",  "eq11",
        "eq23", "eq35", "eq22", "eq34",  "eq50",  "eq50a", "eq51a"};
    return ids;
}

double bound_value(const BoundSpec& spec, double t_blowup, double t) {
    const double r = t_blowup - t;
    if (!(r > 0.0)) throw std::domain_error("bound: grid point at or past t_blowup");
    if (log_corrected(spec.id) && std::abs(r - 1.0) < 1e-12)
        throw std::domain_error("bound " + spec.id + ": t_blowup - t = 1 is excluded");

    const double c = param(spec, "c", 1.0);
    const double eta = param(spec, "eta", 1.0);
    const double alpha = param(spec, "alpha", 1.0);
    const double l2 = param(spec, "l2", 1.0);
    const double m = param(spec, "m", 1.0);
    const double nn = param(spec, "n", 1.0);
    const double s = param(spec, "s", 2.5);
    const double eps = param(spec, "eps", 0.1);

    if (spec.id == "eq2") return std::pow(c / r, 0.25);
    if (spec.id == "eq3") return c * std::pow(l2, (3.0 - 2.0 * s) / 3.0) / std::pow(r, s / 3.0);
    if (spec.id == "eq4")
        return c * std::pow(l2, (5.0 - 2.0 * s) / 5.0) / std::pow(r, 2.0 * s / 3.0);
    if (spec.id == "eq5") return c / (r * std::abs(std::log(r)));
    if (spec.id == "eq6") return c / std::pow(r, 0.5 - eps);
    if (spec.id == "eq7") return c / std::sqrt(r * std::abs(std::log(r)));
    if (spec.id == "eq11") return eta / std::pow(r, (nn + 1.0) / 2.0);
    if (spec.id == "eq23" || spec.id == "eq35")
        return eta / std::pow(r, (nn + 1.0) / 4.0);
    if (spec.id == "eq50a") return eta / r;
    if (spec.id == "eq51a") return eta / std::sqrt(r);
    if (spec.id == "eq22") return alpha / (c * std::pow(m, nn) * std::pow(r, nn + 1.0));
    if (spec.id == "eq34" || spec.id == "eq50")
        return std::sqrt(alpha / (c * std::pow(m, nn) * std::pow(r, nn + 1.0)));
    throw std::invalid_argument("unknown bound id: " + spec.id);
}

BoundComparison compare_bounds(const PowerLawFit& fit, const BoundSpec& spec,
                               const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("compare: grid must be non-empty");
    BoundComparison cmp;
    cmp.bound_id = spec.id;
    cmp.params = spec.params;
    if (log_corrected(spec.id)) cmp.log_base = "e";

    double worst = std::numeric_limits<double>::infinity();
    bool holds = true;
    for (double t : grid) {
        const double r = fit.t_blowup - t;
        if (!(r > 0.0))
            throw std::domain_error("compare: grid point at or past t_blowup");
        const double fitted = fit.amplitude * std::pow(r, -fit.alpha);
        const double bound = bound_value(spec, fit.t_blowup, t);
        const double margin = fitted - bound;
        if (margin < worst) {
            worst = margin;
            cmp.t_of_worst = t;
        }
        const double scale = std::max(std::abs(fitted), std::abs(bound));
        if (margin < -1e-12 * std::max(1.0, scale)) holds = false;
    }
    cmp.worst_margin = worst;
    cmp.holds = holds;
    return cmp;
}

nlohmann::ordered_json bound_comparison_json(const BoundComparison& cmp) {
    nlohmann::ordered_json j;
    j["bound_id"] = cmp.bound_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cmp.params) params[k] = v;
    j["params"] = params;
    j["holds"] = cmp.holds;
    j["worst_margin"] = cmp.worst_margin;
    j["t_of_worst_margin"] = cmp.t_of_worst;
    if (!cmp.log_base.empty()) j["log_base"] = cmp.log_base;
    return j;
}

nlohmann::ordered_json power_law_fit_json(const PowerLawFit& fit) {
    nlohmann::ordered_json j;
    j["t_blowup"] = fit.t_blowup;
    j["alpha"] = fit.alpha;
    j["amplitude"] = fit.amplitude;
    j["residual"] = fit.residual;
    return j;
}

}  // namespace blowlab
