#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace blowlab {

/// Least-squares power law y(t) = amplitude * (t_blowup - t)^{-alpha},
/// fitted in log space.
struct PowerLawFit {
    double t_blowup = 0.0;
    double alpha = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;  // RMS log-space misfit at the optimum
};

/// Fits (t, y) samples: for each candidate blow-up time the slope/intercept
/// regression is closed-form, and the candidate is optimised by a coarse
/// scan plus golden-section search over (t_last, t_last + 10 * time range].
/// Requires >= 8 samples, strictly increasing t, positive y.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& series);

/// A lower-bound formula selected by id with its numeric parameters.
/// Catalogue (value at time t, r = t_blowup - t):
///   eq2   : (c/r)^{1/4}
///   eq3   : c * l2^{(3-2s)/3} / r^{s/3}
///   eq4   : c * l2^{(5-2s)/5} / r^{2s/3}
///   eq5   : c / (r |ln r|),  r != 1
///   eq6   : c / r^{1/2-eps}
///   eq7   : c / sqrt(r |ln r|),  r != 1
///   eq11  : eta / r^{(n+1)/2}
///   eq23  : eta / r^{(n+1)/4}     (eq35 is the same formula)
///   eq50a : eta / r
///   eq51a : eta / sqrt(r)
///   eq22  : alpha / (c m^n r^{n+1})        (bound on a squared norm z)
///   eq34  : sqrt(alpha / (c m^n r^{n+1}))  (bound on z when z^2 is bounded;
///   eq50    identical formula)
/// Unlisted parameters default to 1 (eps defaults to 0.1, s to 2.5).
struct BoundSpec {
    std::string id;
    std::map<std::string, double> params;
};

const std::vector<std::string>& bound_catalog();

/// Evaluates the catalogue formula; rejects t >= t_blowup, and r = 1 for the
/// log-corrected entries (natural log, which the report states explicitly).
double bound_value(const BoundSpec& spec, double t_blowup, double t);

struct BoundComparison {
    std::string bound_id;
    std::map<std::string, double> params;
    bool holds = false;          // fitted curve >= bound on the whole grid
    double worst_margin = 0.0;   // min over the grid of fit(t) - bound(t)
    double t_of_worst = 0.0;
    std::string log_base;        // "e" for eq5/eq7, empty otherwise
};

/// Pointwise comparison of the fitted curve against the bound on a caller
/// grid (each point must precede the fitted blow-up time). `holds` uses a
/// 1e-12 relative tolerance.
BoundComparison compare_bounds(const PowerLawFit& fit, const BoundSpec& spec,
                               const std::vector<double>& grid);

nlohmann::ordered_json bound_comparison_json(const BoundComparison& cmp);

nlohmann::ordered_json power_law_fit_json(const PowerLawFit& fit);

}  // namespace blowlab
