#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace blowlab {

struct Trajectory;

/// Norm/pairing columns of a trajectory, either taken straight from an
/// in-memory run or re-read from the CSV artifacts of `simulate`.
/// trilinear holds ((u.grad)u, lap u) per row and may be empty when only
/// the norm CSV is available.
struct NormTable {
    std::vector<double> t, l2, h1, h32, h2, h52, trilinear;

    std::size_t size() const { return t.size(); }
    /// Validates strictly increasing, uniformly spaced t and returns the
    /// spacing.
    double spacing() const;

    static NormTable from_trajectory(const Trajectory& traj);
    /// Reads the `t,l2,h1,h32,h2,h52,energy_residual` CSV; if balance_csv is
    /// nonempty it must provide `t,trilinear` rows aligned with the same
    /// times.
    static NormTable from_csv(const std::string& trajectory_csv,
                              const std::string& balance_csv = "");
};

struct IneqSample {
    double t = 0.0;
    double lhs = 0.0;
    double rhs_unit = 0.0;  // right side evaluated with constant 1
};

/// One monitored inequality along a trajectory. The empirical constant is
/// the smallest c with lhs <= c * rhs_unit over every retained sample
/// (clamped at 0 when all left sides are negative); samples with
/// rhs_unit < 1e-30 carry no information and are not retained.
struct InequalityReport {
    std::string name;  // h52 | h32 | h1 | trilinear
    std::vector<IneqSample> samples;
    std::size_t n_retained = 0;
    double empirical_constant = 0.0;
    std::map<std::string, double> parameters;
};

/// d/dt ||u||_{H^{5/2}}^2 <= c ||u||_{L2}^{4 xi} ||u||_{H^{5/2}}^{3+xi},
/// xi = eps/(5(4-eps)), eps in [0,1]. Derivatives by centered differences,
/// so samples live at interior rows.
InequalityReport check_h52_ineq(const NormTable& table, double eps);
InequalityReport check_h52_ineq(const Trajectory& traj, double eps);

/// d/dt ||u||_{H^{3/2}}^2 <= c ||u||_{L2}^{2 gamma} ||u||_{H^{3/2}}^{4+gamma/3},
/// gamma = 2 delta/(2-delta), 0 <= delta < 2.
InequalityReport check_h32_ineq(const NormTable& table, double delta);
InequalityReport check_h32_ineq(const Trajectory& traj, double delta);

/// d/dt ||u||_{H^1}^2 <= c ||u||_{H^1}^6.
InequalityReport check_h1_ineq(const NormTable& table);
InequalityReport check_h1_ineq(const Trajectory& traj);

/// |((u.grad)u, lap u)| <= c ||u||_{H^1}^{3/2} ||u||_{H^2}^{3/2}; pointwise,
/// no time derivative, so every row is a sample. Requires trilinear data.
InequalityReport check_trilinear(const NormTable& table);
InequalityReport check_trilinear(const Trajectory& traj);

/// CSV with header `name,t,lhs,rhs_unit,ratio` (ratio empty-safe: 0 when
/// rhs_unit is below the retention floor).
void write_inequality_csv(const InequalityReport& report, const std::string& path);

/// Summary object {name, empirical_constant, n_samples, n_retained,
/// parameters, norm_convention}.
nlohmann::ordered_json inequality_report_json(const InequalityReport& report);

}  // namespace blowlab
