#include "blowlab/inequality_monitor.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "blowlab/solver.hpp"
#include "blowlab/util.hpp"

namespace blowlab {

namespace {

constexpr double kRetentionFloor = 1e-30;

void finalize(InequalityReport& report) {
    double sup = 0.0;
    for (const IneqSample& s : report.samples) {
        if (s.rhs_unit < kRetentionFloor) continue;
        ++report.n_retained;
        sup = std::max(sup, s.lhs / s.rhs_unit);
    }
    report.empirical_constant = sup;
}

// lhs_i = d/dt (value_i^2) by centered differences; value picked per check.
InequalityReport derivative_report(const NormTable& table, const std::string& name,
                                   const std::vector<double>& value,
                                   const std::function<double(std::size_t)>& rhs_unit) {
    if (table.size() < 3)
        throw std::invalid_argument(name + ": need at least 3 snapshots");
    const double h = table.spacing();
    InequalityReport report;
    report.name = name;
    for (std::size_t i = 1; i + 1 < table.size(); ++i) {
        IneqSample s;
        s.t = table.t[i];
        s.lhs = (value[i + 1] * value[i + 1] - value[i - 1] * value[i - 1]) / (2.0 * h);
        s.rhs_unit = rhs_unit(i);
        report.samples.push_back(s);
    }
    finalize(report);
    return report;
}

}  // namespace

double NormTable::spacing() const {
    if (t.size() < 2) throw std::invalid_argument("norm table: need >= 2 rows");
    const double h = t[1] - t[0];
    if (!(h > 0.0)) throw std::invalid_argument("norm table: times must increase");
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double d = t[i] - t[i - 1];
        if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("norm table: non-uniform snapshot spacing");
    }
    return h;
}

NormTable NormTable::from_trajectory(const Trajectory& traj) {
    NormTable nt;
    for (const BalanceRecord& b : traj.balances) {
        nt.t.push_back(b.t);
        nt.l2.push_back(b.l2);
        nt.h1.push_back(b.h1);
        nt.h32.push_back(b.h32);
        nt.h2.push_back(b.h2);
        nt.h52.push_back(b.h52);
        nt.trilinear.push_back(b.trilinear);
    }
    return nt;
}

NormTable NormTable::from_csv(const std::string& trajectory_csv,
                              const std::string& balance_csv) {
    const CsvTable csv = read_csv(trajectory_csv);
    const int ct = csv.column("t");
    const int cl2 = csv.column("l2");
    const int ch1 = csv.column("h1");
    const int ch32 = csv.column("h32");
    const int ch2 = csv.column("h2");
    const int ch52 = csv.column("h52");
    if (ct < 0 || cl2 < 0 || ch1 < 0 || ch32 < 0 || ch2 < 0 || ch52 < 0)
        throw std::runtime_error("trajectory CSV missing norm columns: " +
                                 trajectory_csv);
    NormTable nt;
    for (const auto& row : csv.rows) {
        nt.t.push_back(row[ct]);
        nt.l2.push_back(row[cl2]);
        nt.h1.push_back(row[ch1]);
        nt.h32.push_back(row[ch32]);
        nt.h2.push_back(row[ch2]);
        nt.h52.push_back(row[ch52]);
    }
    if (!balance_csv.empty()) {
        const CsvTable bal = read_csv(balance_csv);
        const int bt = bal.column("t");
        const int btr = bal.column("trilinear");
        if (bt < 0 || btr < 0)
            throw std::runtime_error("balance CSV missing t/trilinear columns: " +
                                     balance_csv);
        if (bal.rows.size() != nt.t.size())
            throw std::runtime_error("balance CSV row count differs from trajectory");
        for (std::size_t i = 0; i < bal.rows.size(); ++i) {
            if (std::abs(bal.rows[i][bt] - nt.t[i]) > 1e-9)
                throw std::runtime_error("balance CSV times differ from trajectory");
            nt.trilinear.push_back(bal.rows[i][btr]);
        }
    }
    return nt;
}

InequalityReport check_h52_ineq(const NormTable& table, double eps) {
    if (!(eps >= 0.0) || !(eps <= 1.0))
        throw std::invalid_argument("h52: eps must lie in [0, 1]");
    const double xi = eps / (5.0 * (4.0 - eps));
    InequalityReport report =
        derivative_report(table, "h52", table.h52, [&](std::size_t i) {
            return std::pow(table.l2[i], 4.0 * xi) * std::pow(table.h52[i], 3.0 + xi);
        });
    report.parameters["eps"] = eps;
    report.parameters["xi"] = xi;
    return report;
}

InequalityReport check_h32_ineq(const NormTable& table, double delta) {
    if (!(delta >= 0.0) || delta >= 2.0)
        throw std::invalid_argument("h32: delta must lie in [0, 2)");
    const double gamma = 2.0 * delta / (2.0 - delta);
    InequalityReport report =
        derivative_report(table, "h32", table.h32, [&](std::size_t i) {
            return std::pow(table.l2[i], 2.0 * gamma) *
                   std::pow(table.h32[i], 4.0 + gamma / 3.0);
        });
    report.parameters["delta"] = delta;
    report.parameters["gamma"] = gamma;
    return report;
}

InequalityReport check_h1_ineq(const NormTable& table) {
    return derivative_report(table, "h1", table.h1, [&](std::size_t i) {
        return std::pow(table.h1[i], 6.0);
    });
}

InequalityReport check_trilinear(const NormTable& table) {
    if (table.size() < 1)
        throw std::invalid_argument("trilinear: need at least 1 snapshot");
    if (table.trilinear.size() != table.size())
        throw std::invalid_argument("trilinear: table lacks pairing data");
    InequalityReport report;
    report.name = "trilinear";
    for (std::size_t i = 0; i < table.size(); ++i) {
        IneqSample s;
        s.t = table.t[i];
        s.lhs = std::abs(table.trilinear[i]);
        s.rhs_unit = std::pow(table.h1[i], 1.5) * std::pow(table.h2[i], 1.5);
        report.samples.push_back(s);
    }
    finalize(report);
    return report;
}

InequalityReport check_h52_ineq(const Trajectory& traj, double eps) {
    return check_h52_ineq(NormTable::from_trajectory(traj), eps);
}
InequalityReport check_h32_ineq(const Trajectory& traj, double delta) {
    return check_h32_ineq(NormTable::from_trajectory(traj), delta);
}
InequalityReport check_h1_ineq(const Trajectory& traj) {
    return check_h1_ineq(NormTable::from_trajectory(traj));
}
InequalityReport check_trilinear(const Trajectory& traj) {
    return check_trilinear(NormTable::from_trajectory(traj));
}

void write_inequality_csv(const InequalityReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "name,t,lhs,rhs_unit,ratio\n";
    for (const IneqSample& s : report.samples) {
        const double ratio = s.rhs_unit >= kRetentionFloor ? s.lhs / s.rhs_unit : 0.0;
        out << report.name << ',' << format_g17(s.t) << ',' << format_g17(s.lhs)
            << ',' << format_g17(s.rhs_unit) << ',' << format_g17(ratio) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

nlohmann::ordered_json inequality_report_json(const InequalityReport& report) {
    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["empirical_constant"] = report.empirical_constant;
    j["n_samples"] = report.samples.size();
    j["n_retained"] = report.n_retained;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.parameters) params[k] = v;
    j["parameters"] = params;
    j["norm_convention"] = "lattice_sum";
    return j;
}

}  // namespace blowlab
