#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "blowlab/spectral_field.hpp"

namespace blowlab {

struct TaylorGreenInit {
    double amplitude = 1.0;
};
struct RandomSmoothInit {
    std::uint64_t seed = 0;
    double decay_rate = 0.5;
};
struct CheckpointInit {
    std::string path;
};
using InitialCondition = std::variant<TaylorGreenInit, RandomSmoothInit, CheckpointInit>;

struct SolverConfig {
    Grid grid;
    double viscosity = 0.1;
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 1;
    InitialCondition initial_condition = TaylorGreenInit{};
};

struct Snapshot {
    double t = 0.0;
    SpectralField field;
};

/// Norms and the convection/Laplacian pairing recorded at one snapshot;
/// the budget identities are reconstructed from consecutive records.
struct BalanceRecord {
    double t = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double h32 = 0.0;
    double h2 = 0.0;
    double h52 = 0.0;
    double trilinear = 0.0;
};

struct Trajectory {
    SolverConfig config;
    std::vector<Snapshot> snapshots;
    std::vector<BalanceRecord> balances;

    double snapshot_spacing() const { return config.dt * config.snapshot_stride; }
};

/// Raised when a run leaves the stable regime (non-finite coefficients or a
/// violated CFL guard), carrying the failing time.
struct InstabilityError : std::runtime_error {
    InstabilityError(const std::string& what, double t_fail)
        : std::runtime_error(what), t(t_fail) {}
    double t = 0.0;
};

SpectralField initial_condition_field(const SolverConfig& config);

/// One integrating-factor RK4 step: the viscous factor e^{-nu |xi|^2 dt} is
/// applied exactly per mode, the projected convection term is treated
/// explicitly through the classical four stages.
SpectralField step(const SpectralField& u, double viscosity, double dt);

/// Marches from t = 0 to t_end (which must be an integer multiple of dt),
/// recording a snapshot and balance record every snapshot_stride steps.
Trajectory simulate(const SolverConfig& config);

/// |d/dt(0.5 ||u||_L2^2) + nu ||u||_H1^2| at interior snapshots, centered
/// differences over the snapshot spacing.
std::vector<double> energy_balance_residual(const Trajectory& traj);

struct EnstrophyRecord {
    double t = 0.0;
    double lhs = 0.0;        // d/dt(0.5 ||grad u||^2) + nu ||lap u||^2
    double trilinear = 0.0;  // ((u.grad)u, lap u)
};

std::vector<EnstrophyRecord> enstrophy_balance(const Trajectory& traj);

/// CSV with header `t,l2,h1,h32,h2,h52,energy_residual`; the residual column
/// is empty-padded with 0 at the two boundary snapshots.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace blowlab
