#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blowlab/cli.hpp"
#include "blowlab/util.hpp"

using namespace blowlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("blowlab");
    for (const auto& a : args) argv.push_back(a.c_str());

    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    CliResult r;
    try {
        r.code = run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_run_config(const fs::path& path, const fs::path& outputs_dir,
                      double dt = 1e-3, double t_end = 5e-3) {
    json cfg;
    cfg["n_modes"] = 8;
    cfg["viscosity"] = 0.2;
    cfg["dt"] = dt;
    cfg["t_end"] = t_end;
    cfg["snapshot_stride"] = 1;
    cfg["initial_condition"] = {{"type", "taylor_green"}, {"amplitude", 0.5}};
    cfg["outputs_dir"] = outputs_dir.string();
    std::ofstream out(path);
    out << cfg.dump(2) << "\n";
}

}  // namespace

TEST_CASE("help and argument errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"simulate"}).code == 1);  // missing config path
    CHECK(run({"fit", "/nonexistent/series.csv"}).code == 1);
    CliResult missing = run({"fit", "/nonexistent/series.csv"});
    CHECK(missing.err.find("series.csv") != std::string::npos);
}

TEST_CASE("randomized window-inequality sweep") {
    CliResult r = run({"lemma-test", "--trials", "1000", "--seed", "7"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["trials"] == 1000);
    CHECK(j["failures"] == 0);
    CHECK(j["seed"] == 7);
    CHECK(j["max_violation"] == 0.0);

    // fixed seed, fixed transcript
    CliResult again = run({"lemma-test", "--trials", "1000", "--seed", "7"});
    CHECK(again.out == r.out);
}

TEST_CASE("certificate verification command") {
    CliResult ok = run({"ode-verify", "--c", "1", "--p", "1.5", "--y0", "1",
                        "--flavor", "sine", "--m", "1", "--n", "1", "--samples",
                        "2001"});
    CHECK(ok.code == 0);
    json j = json::parse(ok.out);
    CHECK(j["holds"] == true);
    CHECK(j["flavor"] == "sine");
    CHECK(j["beta"].get<double>() == 1.0);  // defaulted to y0
    CHECK(j["samples"] == 2001);
    CHECK(j["worst_margin_eq22"].get<double>() > 0.0);

    // inflated floor: command reports the violation through the exit code
    CliResult bad = run({"ode-verify", "--c", "10", "--p", "1.5", "--y0", "0.1",
                         "--flavor", "sine", "--m", "2", "--n", "1", "--beta", "10",
                         "--samples", "2001"});
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.out)["holds"] == false);

    CHECK(run({"ode-verify", "--c", "1", "--p", "1.5", "--y0", "1", "--flavor",
               "nope", "--m", "1", "--n", "1"})
              .code == 1);
    // window too short for the requested m
    CHECK(run({"ode-verify", "--c", "1", "--p", "3", "--y0", "1", "--flavor",
               "sine", "--m", "1", "--n", "1"})
              .code == 1);

    // --out writes the same JSON plus a manifest
    fs::path dir = fresh_dir("blowlab_cli_ode");
    fs::path out = dir / "cert.json";
    CliResult filed = run({"ode-verify", "--c", "1", "--p", "1.5", "--y0", "1",
                           "--flavor", "h32", "--m", "1", "--n", "2", "--out",
                           out.string()});
    CHECK(filed.code == 0);
    REQUIRE(fs::exists(out));
    json stored = json::parse(read_file_bytes(out.string()));
    CHECK(stored["variant"] == "h32");
    CHECK(stored["exponent"].get<double>() == 0.75);
    CHECK(fs::exists(dir / "manifest_ode-verify.json"));
    fs::remove_all(dir);
}

TEST_CASE("simulate, monitor, and report round trip") {
    fs::path work = fresh_dir("blowlab_cli_run");
    fs::path out_a = work / "run_a";
    fs::path cfg_a = work / "config_a.json";
    write_run_config(cfg_a, out_a);

    CliResult sim = run({"simulate", cfg_a.string()});
    CHECK(sim.code == 0);
    REQUIRE(fs::exists(out_a / "trajectory.csv"));
    REQUIRE(fs::exists(out_a / "balance.csv"));
    CHECK(fs::exists(out_a / "snapshot_000000.ckpt"));
    CHECK(fs::exists(out_a / "snapshot_000005.ckpt"));
    CHECK(!fs::exists(out_a / "snapshot_000006.ckpt"));

    json manifest =
        json::parse(read_file_bytes((out_a / "manifest_simulate.json").string()));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["config_digest"].get<std::string>().size() == 16);
    CHECK(manifest["outputs"].size() == 2 + 6);

    // byte-identical artifacts on a repeated run
    fs::path out_b = work / "run_b";
    fs::path cfg_b = work / "config_b.json";
    write_run_config(cfg_b, out_b);
    CHECK(run({"simulate", cfg_b.string()}).code == 0);
    CHECK(read_file_bytes((out_a / "trajectory.csv").string()) ==
          read_file_bytes((out_b / "trajectory.csv").string()));
    CHECK(read_file_bytes((out_a / "balance.csv").string()) ==
          read_file_bytes((out_b / "balance.csv").string()));
    CHECK(read_file_bytes((out_a / "snapshot_000003.ckpt").string()) ==
          read_file_bytes((out_b / "snapshot_000003.ckpt").string()));

    // monitor each supported inequality off the stored artifacts
    for (const std::string ineq : {"h52", "h32", "h1", "trilinear"}) {
        CAPTURE(ineq);
        CliResult mon = run({"monitor", out_a.string(), "--ineq", ineq});
        CHECK(mon.code == 0);
        json mj = json::parse(mon.out);
        CHECK(mj["name"] == ineq);
        CHECK(mj["norm_convention"] == "lattice_sum");
        CHECK(fs::exists(out_a / ("ineq_" + ineq + ".csv")));
        CHECK(fs::exists(out_a / ("ineq_" + ineq + ".json")));
    }
    CHECK(run({"monitor", out_a.string(), "--ineq", "h52", "--eps", "0.5"}).code == 0);
    CHECK(run({"monitor", out_a.string(), "--ineq", "bogus"}).code == 1);
    CHECK(run({"monitor", (work / "void").string(), "--ineq", "h1"}).code == 1);

    // aggregate: the report folds in the trajectory summary and every
    // inequality JSON
    CliResult rep = run({"report", out_a.string()});
    CHECK(rep.code == 0);
    json rj = json::parse(rep.out);
    CHECK(rj["trajectory"]["n_snapshots"] == 6);
    CHECK(rj["inequalities"].size() == 4);
    CHECK(rj["fits"].empty());
    REQUIRE(fs::exists(out_a / "report.json"));
    REQUIRE(fs::exists(out_a / "norms_long.csv"));
    CsvTable longtab = read_csv((out_a / "norms_long.csv").string());
    CHECK(longtab.header == std::vector<std::string>{"t", "s", "value"});
    CHECK(longtab.rows.size() == 5 * 6);

    fs::remove_all(work);
}

TEST_CASE("simulate rejects malformed configurations") {
    fs::path work = fresh_dir("blowlab_cli_badcfg");

    fs::path cfg = work / "bad.json";
    {
        std::ofstream out(cfg);
        out << "{ not json";
    }
    CHECK(run({"simulate", cfg.string()}).code == 1);

    json j;
    j["n_modes"] = 8;
    j["viscosity"] = 0.2;
    j["dt"] = 1e-3;
    j["t_end"] = 5e-3;
    j["snapshot_stride"] = 1;
    j["initial_condition"] = {{"type", "taylor_green"}, {"amplitude", 0.5}};
    j["outputs_dir"] = (work / "out").string();

    json unknown = j;
    unknown["extra_knob"] = 3;  // fail closed on unrecognized keys
    {
        std::ofstream out(cfg);
        out << unknown.dump();
    }
    CliResult r = run({"simulate", cfg.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("extra_knob") != std::string::npos);

    json missing = j;
    missing.erase("viscosity");
    {
        std::ofstream out(cfg);
        out << missing.dump();
    }
    CHECK(run({"simulate", cfg.string()}).code == 1);

    json bad_ic = j;
    bad_ic["initial_condition"] = {{"type", "taylor_green"}};
    {
        std::ofstream out(cfg);
        out << bad_ic.dump();
    }
    CHECK(run({"simulate", cfg.string()}).code == 1);

    CHECK(run({"simulate", (work / "absent.json").string()}).code == 1);
    fs::remove_all(work);
}

TEST_CASE("unstable configurations exit with the check-failure code") {
    fs::path work = fresh_dir("blowlab_cli_cfl");
    fs::path cfg = work / "config.json";
    write_run_config(cfg, work / "out", /*dt=*/0.5, /*t_end=*/1.0);
    CliResult r = run({"simulate", cfg.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("CFL") != std::string::npos);
    fs::remove_all(work);
}

TEST_CASE("fit command with bound comparisons") {
    fs::path work = fresh_dir("blowlab_cli_fit");
    fs::path series = work / "series.csv";
    {
        std::ofstream out(series);
        out << "t,value\n";
        for (int i = 0; i < 20; ++i) {
            const double t = 0.9 * i / 19.0;
            out << format_g17(t) << ',' << format_g17(1.0 / (1.0 - t)) << '\n';
        }
    }

    CliResult r = run({"fit", series.string(), "--compare", "eq51a", "--param",
                       "eta=0.5", "--out", (work / "fit.json").string()});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["fit"]["t_blowup"].get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(j["fit"]["alpha"].get<double>() - 1.0) < 1e-6);
    REQUIRE(j["comparisons"].size() == 1);
    CHECK(j["comparisons"][0]["bound_id"] == "eq51a");
    CHECK(j["comparisons"][0]["holds"] == true);
    CHECK(fs::exists(work / "fit.json"));

    // a bound the data sits below: check-failure exit
    CliResult dominated = run({"fit", series.string(), "--compare", "eq51a",
                               "--param", "eta=100"});
    CHECK(dominated.code == 2);
    CHECK(json::parse(dominated.out)["comparisons"][0]["holds"] == false);

    CHECK(run({"fit", series.string(), "--compare", "eq51a", "--param", "oops"})
              .code == 1);
    CHECK(run({"fit", series.string(), "--compare", "nosuch"}).code == 1);
    fs::remove_all(work);
}
