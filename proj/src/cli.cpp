#include "blowlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "blowlab/blowup_ode.hpp"
#include "blowlab/checkpoint.hpp"
#include "blowlab/inequality_monitor.hpp"
#include "blowlab/rate_fit.hpp"
#include "blowlab/solver.hpp"
#include "blowlab/util.hpp"

namespace blowlab {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCheckFailure = 2;

std::string iso_timestamp_utc() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// The manifest ties every produced file to the digest of the configuration
// that produced it; the timestamp is the only non-reproducible field.
void write_manifest(const fs::path& dir, const std::string& command,
                    const std::string& config_digest,
                    const std::vector<std::string>& outputs) {
    ordered_json j;
    j["command"] = command;
    j["config_digest"] = config_digest;
    j["tool_version"] = kToolVersion;
    j["outputs"] = outputs;
    j["timestamp"] = iso_timestamp_utc();
    write_text(dir / ("manifest_" + command + ".json"), j.dump(2) + "\n");
}

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw std::runtime_error("unknown key '" + item.key() + "' in " + where);
    for (const std::string& key : required)
        if (!obj.contains(key))
            throw std::runtime_error("missing key '" + key + "' in " + where);
}

SolverConfig parse_solver_config(const nlohmann::json& j, std::string* outputs_dir) {
    require_keys(j,
                 {"n_modes", "viscosity", "dt", "t_end", "snapshot_stride",
                  "initial_condition", "outputs_dir"},
                 {"n_modes", "viscosity", "dt", "t_end", "snapshot_stride",
                  "initial_condition", "outputs_dir"},
                 "config");
    SolverConfig cfg;
    cfg.grid = Grid::cubic(j.at("n_modes").get<int>());
    cfg.viscosity = j.at("viscosity").get<double>();
    cfg.dt = j.at("dt").get<double>();
    cfg.t_end = j.at("t_end").get<double>();
    cfg.snapshot_stride = j.at("snapshot_stride").get<int>();

    const nlohmann::json& ic = j.at("initial_condition");
    if (!ic.is_object() || !ic.contains("type"))
        throw std::runtime_error("initial_condition must be an object with a 'type'");
    const std::string type = ic.at("type").get<std::string>();
    if (type == "taylor_green") {
        require_keys(ic, {"type", "amplitude"}, {"type", "amplitude"},
                     "initial_condition");
        cfg.initial_condition = TaylorGreenInit{ic.at("amplitude").get<double>()};
    } else if (type == "random_smooth") {
        require_keys(ic, {"type", "seed", "decay_rate"}, {"type", "seed", "decay_rate"},
                     "initial_condition");
        cfg.initial_condition = RandomSmoothInit{ic.at("seed").get<std::uint64_t>(),
                                                 ic.at("decay_rate").get<double>()};
    } else if (type == "from_checkpoint") {
        require_keys(ic, {"type", "path"}, {"type", "path"}, "initial_condition");
        cfg.initial_condition = CheckpointInit{ic.at("path").get<std::string>()};
    } else {
        throw std::runtime_error("unknown initial_condition type '" + type + "'");
    }
    *outputs_dir = j.at("outputs_dir").get<std::string>();
    return cfg;
}

int cmd_simulate(const std::string& config_path) {
    const std::string raw = read_file_bytes(config_path);
    const std::string digest = fnv1a64_hex(raw);
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("config is not valid JSON: " + std::string(e.what()));
    }
    std::string outputs_dir;
    const SolverConfig cfg = parse_solver_config(parsed, &outputs_dir);

    const Trajectory traj = simulate(cfg);

    const fs::path dir(outputs_dir);
    fs::create_directories(dir);
    std::vector<std::string> outputs;

    const fs::path traj_csv = dir / "trajectory.csv";
    write_trajectory_csv(traj, traj_csv.string());
    outputs.push_back(traj_csv.string());

    std::string balance = "t,trilinear\n";
    for (const BalanceRecord& b : traj.balances)
        balance += format_g17(b.t) + "," + format_g17(b.trilinear) + "\n";
    const fs::path balance_csv = dir / "balance.csv";
    write_text(balance_csv, balance);
    outputs.push_back(balance_csv.string());

    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof(name), "snapshot_%06zu.ckpt", i);
        const fs::path ckpt = dir / name;
        write_checkpoint(traj.snapshots[i].field, ckpt.string());
        outputs.push_back(ckpt.string());
    }

    write_manifest(dir, "simulate", digest, outputs);
    return kOk;
}

int cmd_monitor(const std::string& traj_dir, const std::string& ineq, double eps,
                double delta) {
    const fs::path dir(traj_dir);
    const fs::path traj_csv = dir / "trajectory.csv";
    const fs::path balance_csv = dir / "balance.csv";
    if (!fs::exists(traj_csv))
        throw std::runtime_error("no trajectory.csv in " + traj_dir);

    NormTable table = NormTable::from_csv(
        traj_csv.string(), fs::exists(balance_csv) ? balance_csv.string() : "");

    InequalityReport report;
    if (ineq == "h52")
        report = check_h52_ineq(table, eps);
    else if (ineq == "h32")
        report = check_h32_ineq(table, delta);
    else if (ineq == "h1")
        report = check_h1_ineq(table);
    else if (ineq == "trilinear")
        report = check_trilinear(table);
    else
        throw std::runtime_error("unknown inequality '" + ineq +
                                 "' (expected h52|h32|h1|trilinear)");

    const std::string digest = fnv1a64_hex(read_file_bytes(traj_csv.string()));
    std::vector<std::string> outputs;
    const fs::path csv = dir / ("ineq_" + ineq + ".csv");
    write_inequality_csv(report, csv.string());
    outputs.push_back(csv.string());
    const fs::path json = dir / ("ineq_" + ineq + ".json");
    write_text(json, inequality_report_json(report).dump(2) + "\n");
    outputs.push_back(json.string());
    write_manifest(dir, "monitor", digest, outputs);

    std::cout << inequality_report_json(report).dump(2) << "\n";
    return kOk;
}

int cmd_ode_verify(double c, double p, double y0, const std::string& flavor, double m,
                   int n, double beta, bool beta_given, int samples,
                   const std::string& out_path) {
    BernoulliProblem prob{c, p, y0};
    prob.validate();
    const double t_blowup = prob.blowup_time();

    BlowupCertificate cert;
    // With y' = c y^p > 0 the solution is increasing, so the floor over the
    // certified window is the initial value.
    const double beta_eff = beta_given ? beta : y0;
    if (flavor == "sine")
        cert = trig_certificate_sine(c, m, n, beta_eff, t_blowup);
    else if (flavor == "h32")
        cert = trig_certificate_halfangle(c, m, n, beta_eff, t_blowup,
                                          HalfangleVariant::h32);
    else if (flavor == "h1")
        cert = trig_certificate_halfangle(c, m, n, beta_eff, t_blowup,
                                          HalfangleVariant::h1);
    else
        throw std::runtime_error("unknown flavor '" + flavor +
                                 "' (expected sine|h32|h1)");

    const CertificateReport report = verify_certificate(cert, prob, samples);
    const ordered_json j = certificate_report_json(report);
    std::cout << j.dump(2) << "\n";

    if (!out_path.empty()) {
        const fs::path out(out_path);
        write_text(out, j.dump(2) + "\n");
        const std::string digest = fnv1a64_hex(
            "c=" + format_g17(c) + ";p=" + format_g17(p) + ";y0=" + format_g17(y0) +
            ";flavor=" + flavor + ";m=" + format_g17(m) + ";n=" + std::to_string(n) +
            ";beta=" + format_g17(beta_eff) + ";samples=" + std::to_string(samples));
        write_manifest(out.has_parent_path() ? out.parent_path() : fs::path("."),
                       "ode-verify", digest, {out.string()});
    }
    return report.holds ? kOk : kCheckFailure;
}

double unit_closed(std::mt19937_64& rng) {  // (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}
double unit_open(std::mt19937_64& rng) {  // [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

int cmd_lemma_test(long trials, std::uint64_t seed, const std::string& out_path) {
    std::mt19937_64 rng(seed);
    long failures = 0;
    double max_violation = 0.0;
    for (long k = 0; k < trials; ++k) {
        const double t_star = 10.0 * unit_closed(rng);
        const double m_min = 1.0 / t_star;
        const double m = m_min * (1.0 + 9.0 * unit_open(rng));
        const int n = 1 + static_cast<int>(unit_open(rng) * 10.0);
        const double window = t_star - 1.0 / m;
        const double t = window * unit_open(rng);
        const LemmaCheck chk = lemma_bound_check(t_star, m, n, t);
        if (!chk.holds) {
            ++failures;
            max_violation = std::max(max_violation, chk.lhs - chk.rhs);
        }
    }
    ordered_json j;
    j["trials"] = trials;
    j["failures"] = failures;
    j["seed"] = seed;
    j["max_violation"] = max_violation;
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
    return failures == 0 ? kOk : kCheckFailure;
}

std::vector<std::pair<double, double>> read_series(const std::string& path) {
    const CsvTable csv = read_csv(path);
    int ct = csv.column("t");
    int cy = csv.column("value");
    if (cy < 0) cy = csv.column("y");
    if (ct < 0 || cy < 0) {
        if (csv.header.size() < 2)
            throw std::runtime_error("series CSV needs t/value columns: " + path);
        ct = 0;
        cy = 1;
    }
    std::vector<std::pair<double, double>> series;
    for (const auto& row : csv.rows) series.emplace_back(row[ct], row[cy]);
    return series;
}

int cmd_fit(const std::string& series_path, const std::vector<std::string>& compare_ids,
            const std::vector<std::string>& params_kv, const std::string& out_path) {
    const auto series = read_series(series_path);
    const PowerLawFit fit = fit_power_law(series);

    std::map<std::string, double> params;
    for (const std::string& kv : params_kv) {
        const auto pos = kv.find('=');
        if (pos == std::string::npos || pos == 0)
            throw std::runtime_error("--param expects key=value, got '" + kv + "'");
        params[kv.substr(0, pos)] = std::strtod(kv.c_str() + pos + 1, nullptr);
    }
    std::vector<double> grid;
    for (const auto& [t, y] : series) grid.push_back(t);

    ordered_json j;
    j["series"] = series_path;
    j["fit"] = power_law_fit_json(fit);
    bool all_hold = true;
    ordered_json comparisons = ordered_json::array();
    for (const std::string& id : compare_ids) {
        const BoundComparison cmp = compare_bounds(fit, BoundSpec{id, params}, grid);
        comparisons.push_back(bound_comparison_json(cmp));
        all_hold = all_hold && cmp.holds;
    }
    j["comparisons"] = comparisons;
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
    return all_hold ? kOk : kCheckFailure;
}

int cmd_report(const std::string& run_dir) {
    const fs::path dir(run_dir);
    if (!fs::is_directory(dir))
        throw std::runtime_error("run directory not found: " + run_dir);

    ordered_json report;
    report["run_dir"] = run_dir;
    report["tool_version"] = kToolVersion;
    std::vector<std::string> outputs;

    const fs::path traj_csv = dir / "trajectory.csv";
    if (fs::exists(traj_csv)) {
        const NormTable table = NormTable::from_csv(traj_csv.string());
        ordered_json t;
        t["n_snapshots"] = table.size();
        if (!table.t.empty()) {
            t["t_first"] = table.t.front();
            t["t_last"] = table.t.back();
            ordered_json fin;
            fin["l2"] = table.l2.back();
            fin["h1"] = table.h1.back();
            fin["h32"] = table.h32.back();
            fin["h2"] = table.h2.back();
            fin["h52"] = table.h52.back();
            t["final_norms"] = fin;
        }
        report["trajectory"] = t;

        // Long-form norm table, one (t, s, value) row per order — the shape
        // plotting tools expect.
        const std::pair<double, const std::vector<double>*> orders[] = {
            {0.0, &table.l2}, {1.0, &table.h1}, {1.5, &table.h32},
            {2.0, &table.h2}, {2.5, &table.h52}};
        std::string longcsv = "t,s,value\n";
        for (const auto& [s, col] : orders)
            for (std::size_t i = 0; i < table.size(); ++i)
                longcsv += format_g17(table.t[i]) + "," + format_g17(s) + "," +
                           format_g17((*col)[i]) + "\n";
        const fs::path longpath = dir / "norms_long.csv";
        write_text(longpath, longcsv);
        outputs.push_back(longpath.string());
    }

    ordered_json inequalities = ordered_json::array();
    ordered_json certificates = ordered_json::array();
    ordered_json fits = ordered_json::array();
    std::vector<std::string> manifests;
    std::vector<fs::path> entries;
    for (const auto& entry : fs::directory_iterator(dir)) entries.push_back(entry.path());
    std::sort(entries.begin(), entries.end());
    for (const fs::path& path : entries) {
        const std::string name = path.filename().string();
        if (name.ends_with(".json")) {
            if (name.starts_with("manifest_")) {
                manifests.push_back(name);
                continue;
            }
            ordered_json content;
            try {
                content = ordered_json::parse(read_file_bytes(path.string()));
            } catch (...) {
                continue;
            }
            if (name.starts_with("ineq_"))
                inequalities.push_back(content);
            else if (content.contains("flavor"))
                certificates.push_back(content);
            else if (content.contains("fit"))
                fits.push_back(content);
        }
    }
    report["inequalities"] = inequalities;
    report["certificates"] = certificates;
    report["fits"] = fits;
    report["manifests"] = manifests;

    const fs::path report_path = dir / "report.json";
    write_text(report_path, report.dump(2) + "\n");
    outputs.push_back(report_path.string());

    std::string digest_input;
    for (const fs::path& path : entries) digest_input += path.filename().string() + "\n";
    write_manifest(dir, "report", fnv1a64_hex(digest_input), outputs);
    std::cout << report.dump(2) << "\n";
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Periodic-box spectral flow runs, differential-inequality "
                 "monitoring, and blow-up rate studies"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a configured flow");
    simulate_cmd->add_option("config", config_path, "JSON run configuration")
        ->required();

    std::string traj_dir, ineq;
    double eps = 1.0, delta = 0.1;
    auto* monitor_cmd =
        app.add_subcommand("monitor", "Evaluate a differential inequality "
                                      "along a stored trajectory");
    monitor_cmd->add_option("trajectory-dir", traj_dir, "Directory produced by simulate")
        ->required();
    monitor_cmd->add_option("--ineq", ineq, "h52|h32|h1|trilinear")->required();
    monitor_cmd->add_option("--eps", eps, "Interpolation parameter for h52");
    monitor_cmd->add_option("--delta", delta, "Interpolation parameter for h32");

    double c = 1.0, p = 1.5, y0 = 1.0, m = 1.0, beta = 0.0;
    int n = 1, samples = 10000;
    std::string flavor, out_path;
    auto* ode_cmd = app.add_subcommand(
        "ode-verify", "Check a trigonometric lower-bound certificate against "
                      "an exact blow-up solution");
    ode_cmd->add_option("--c", c, "Constant of y' = c y^p")->required();
    ode_cmd->add_option("--p", p, "Exponent in (1, 3]")->required();
    ode_cmd->add_option("--y0", y0, "Initial value")->required();
    ode_cmd->add_option("--flavor", flavor, "sine|h32|h1")->required();
    ode_cmd->add_option("--m", m, "Window parameter (>= 1)")->required();
    ode_cmd->add_option("--n", n, "Amplification power (>= 1)")->required();
    auto* beta_opt = ode_cmd->add_option("--beta", beta, "Floor for the solution "
                                                         "(defaults to y0)");
    ode_cmd->add_option("--samples", samples, "Grid points on [0, t_star]");
    ode_cmd->add_option("--out", out_path, "Write the JSON report here");

    long trials = 10000;
    std::uint64_t seed = 12345;
    std::string lemma_out;
    auto* lemma_cmd = app.add_subcommand(
        "lemma-test", "Randomized check of (T*-t) <= m^n (T*-t)^{n+1}");
    lemma_cmd->add_option("--trials", trials, "Number of random tuples");
    lemma_cmd->add_option("--seed", seed, "RNG seed");
    lemma_cmd->add_option("--out", lemma_out, "Write the JSON summary here");

    std::string series_path, fit_out;
    std::vector<std::string> compare_ids, params_kv;
    auto* fit_cmd =
        app.add_subcommand("fit", "Fit a power law and compare against bounds");
    fit_cmd->add_option("series", series_path, "CSV with t,value (or t,y) columns")
        ->required();
    fit_cmd->add_option("--compare", compare_ids, "Bound ids to compare against");
    fit_cmd->add_option("--param", params_kv, "key=value bound parameters");
    fit_cmd->add_option("--out", fit_out, "Write the JSON result here");

    std::string run_dir;
    auto* report_cmd =
        app.add_subcommand("report", "Aggregate a run directory into one JSON");
    report_cmd->add_option("run-dir", run_dir, "Directory with run artifacts")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            std::cout << app.help() << "\n";
            return kOk;
        }
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(config_path);
        if (monitor_cmd->parsed()) return cmd_monitor(traj_dir, ineq, eps, delta);
        if (ode_cmd->parsed())
            return cmd_ode_verify(c, p, y0, flavor, m, n, beta, beta_opt->count() > 0,
                                  samples, out_path);
        if (lemma_cmd->parsed()) return cmd_lemma_test(trials, seed, lemma_out);
        if (fit_cmd->parsed())
            return cmd_fit(series_path, compare_ids, params_kv, fit_out);
        if (report_cmd->parsed()) return cmd_report(run_dir);
    } catch (const InstabilityError& e) {
        std::cerr << "check failure: " << e.what() << " at t=" << format_g17(e.t)
                  << "\n";
        return kCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    std::cerr << "error: no subcommand given\n";
    return kInputError;
}

}  // namespace blowlab
