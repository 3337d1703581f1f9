#include "blowlab/solver.hpp"

#include <cmath>
#include <fstream>

#include "blowlab/checkpoint.hpp"
#include "blowlab/sobolev.hpp"
#include "blowlab/spectral_ops.hpp"
#include "blowlab/util.hpp"

namespace blowlab {

namespace {

// Largest pointwise speed admissible for this dt before the explicit
// convection stage is declared unstable.
bool cfl_ok(double dt, int n_modes, double max_speed) {
    return dt * n_modes * max_speed <= 0.5 + 1e-12;
}

struct StepResult {
    SpectralField u;
    double max_speed = 0.0;
};

// Four-stage integrating-factor step; E = exp(-nu |xi|^2 dt/2) handles the
// stiff viscous part exactly, so only convection limits dt.
StepResult step_impl(const SpectralField& u, double viscosity, double dt) {
    const Grid& g = u.grid();
    const ModeTable& mt = mode_table(g);
    const long origin = g.index(0, 0, 0);
    Eigen::VectorXd half = (-0.5 * viscosity * dt * mt.k2).array().exp();
    Eigen::VectorXd full = half.cwiseProduct(half);
    // The table stores |xi|^2 = 1 at the origin; the coefficient there is
    // pinned to zero, so the wrong factor never matters, but keep the exact
    // identity anyway.
    half(origin) = 1.0;
    full(origin) = 1.0;
    const Eigen::VectorXcd halfc = half.cast<std::complex<double>>();
    const Eigen::VectorXcd fullc = full.cast<std::complex<double>>();

    auto rhs = [](const SpectralField& v) {
        ConvectionTerm conv = convection_term(v);
        SpectralField f = project_divergence_free(conv.term);
        f *= -1.0;
        return std::pair<SpectralField, double>(std::move(f), conv.max_speed);
    };

    auto [k1, speed] = rhs(u);

    SpectralField ua(g), ub(g), uc(g);
    for (int i = 0; i < 3; ++i)
        ua.comp(i) = halfc.cwiseProduct(u.comp(i) + (dt / 2.0) * k1.comp(i));
    SpectralField k2 = rhs(ua).first;

    for (int i = 0; i < 3; ++i)
        ub.comp(i) = halfc.cwiseProduct(u.comp(i)) + (dt / 2.0) * k2.comp(i);
    SpectralField k3 = rhs(ub).first;

    for (int i = 0; i < 3; ++i)
        uc.comp(i) = fullc.cwiseProduct(u.comp(i)) + dt * halfc.cwiseProduct(k3.comp(i));
    SpectralField k4 = rhs(uc).first;

    StepResult out{SpectralField(g), speed};
    for (int i = 0; i < 3; ++i)
        out.u.comp(i) = fullc.cwiseProduct(u.comp(i)) +
                        (dt / 6.0) * (fullc.cwiseProduct(k1.comp(i)) +
                                      2.0 * halfc.cwiseProduct(k2.comp(i) + k3.comp(i)) +
                                      k4.comp(i));
    return out;
}

BalanceRecord balance_at(double t, const SpectralField& u) {
    BalanceRecord b;
    b.t = t;
    b.l2 = hs_norm(u, 0.0);
    b.h1 = hs_norm(u, 1.0);
    b.h32 = hs_norm(u, 1.5);
    b.h2 = hs_norm(u, 2.0);
    b.h52 = hs_norm(u, 2.5);
    b.trilinear = l2_inner(convection_term(u).term, laplacian(u));
    return b;
}

}  // namespace

SpectralField initial_condition_field(const SolverConfig& config) {
    if (const auto* tg = std::get_if<TaylorGreenInit>(&config.initial_condition))
        return taylor_green(config.grid, tg->amplitude);
    if (const auto* rs = std::get_if<RandomSmoothInit>(&config.initial_condition))
        return random_smooth(config.grid, rs->seed, rs->decay_rate);
    const auto& cp = std::get<CheckpointInit>(config.initial_condition);
    SpectralField u = read_checkpoint(cp.path);
    if (!(u.grid() == config.grid))
        throw std::runtime_error("checkpoint grid does not match config grid");
    symmetrize(u);
    return project_divergence_free(u);
}

SpectralField step(const SpectralField& u, double viscosity, double dt) {
    if (!(viscosity > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("step: viscosity and dt must be positive");
    StepResult r = step_impl(u, viscosity, dt);
    if (!r.u.finite()) throw InstabilityError("step produced non-finite coefficients", 0.0);
    return r.u;
}

Trajectory simulate(const SolverConfig& config) {
    if (!(config.viscosity > 0.0)) throw std::invalid_argument("viscosity must be > 0");
    if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (config.t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");
    if (config.snapshot_stride < 1)
        throw std::invalid_argument("snapshot_stride must be >= 1");
    const double steps_real = config.t_end / config.dt;
    const long steps = std::lround(steps_real);
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * (steps_real + 1.0))
        throw std::invalid_argument("t_end must be an integer multiple of dt");

    Trajectory traj;
    traj.config = config;
    SpectralField u = initial_condition_field(config);
    traj.snapshots.push_back({0.0, u});
    traj.balances.push_back(balance_at(0.0, u));

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * config.dt;
        StepResult r = step_impl(u, config.viscosity, config.dt);
        if (!cfl_ok(config.dt, config.grid.n_modes, r.max_speed))
            throw InstabilityError("CFL guard violated", t);
        if (!r.u.finite())
            throw InstabilityError("non-finite coefficients", t + config.dt);
        u = project_divergence_free(r.u);
        if ((k + 1) % config.snapshot_stride == 0) {
            const double ts = static_cast<double>(k + 1) * config.dt;
            traj.snapshots.push_back({ts, u});
            traj.balances.push_back(balance_at(ts, u));
        }
    }
    return traj;
}

std::vector<double> energy_balance_residual(const Trajectory& traj) {
    const std::size_t n = traj.balances.size();
    if (n < 3) throw std::invalid_argument("need at least 3 snapshots");
    const double h = traj.snapshot_spacing();
    std::vector<double> out;
    out.reserve(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double e_prev = 0.5 * traj.balances[i - 1].l2 * traj.balances[i - 1].l2;
        const double e_next = 0.5 * traj.balances[i + 1].l2 * traj.balances[i + 1].l2;
        const double dissipation =
            traj.config.viscosity * traj.balances[i].h1 * traj.balances[i].h1;
        out.push_back(std::abs((e_next - e_prev) / (2.0 * h) + dissipation));
    }
    return out;
}

std::vector<EnstrophyRecord> enstrophy_balance(const Trajectory& traj) {
    const std::size_t n = traj.balances.size();
    if (n < 3) throw std::invalid_argument("need at least 3 snapshots");
    const double h = traj.snapshot_spacing();
    std::vector<EnstrophyRecord> out;
    out.reserve(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double g_prev = 0.5 * traj.balances[i - 1].h1 * traj.balances[i - 1].h1;
        const double g_next = 0.5 * traj.balances[i + 1].h1 * traj.balances[i + 1].h1;
        EnstrophyRecord r;
        r.t = traj.balances[i].t;
        r.lhs = (g_next - g_prev) / (2.0 * h) +
                traj.config.viscosity * traj.balances[i].h2 * traj.balances[i].h2;
        r.trilinear = traj.balances[i].trilinear;
        out.push_back(r);
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,l2,h1,h32,h2,h52,energy_residual\n";
    std::vector<double> residual;
    if (traj.balances.size() >= 3) residual = energy_balance_residual(traj);
    for (std::size_t i = 0; i < traj.balances.size(); ++i) {
        const BalanceRecord& b = traj.balances[i];
        // Boundary snapshots have no centered difference; their residual
        // column is written as 0.
        double r = 0.0;
        if (i >= 1 && i + 1 <= residual.size()) r = residual[i - 1];
        out << format_g17(b.t) << ',' << format_g17(b.l2) << ',' << format_g17(b.h1)
            << ',' << format_g17(b.h32) << ',' << format_g17(b.h2) << ','
            << format_g17(b.h52) << ',' << format_g17(r) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace blowlab
