#pragma once

#include <cstdint>

#include "blowlab/spectral_field.hpp"

namespace blowlab {

/// Convection term (u.grad)u before Leray projection, plus the largest
/// pointwise speed seen on the collocation grid (CFL diagnostic).
struct ConvectionTerm {
    SpectralField term;
    double max_speed = 0.0;
};

/// Leray-Helmholtz projection: mode-wise uhat - xi (xi.uhat)/|xi|^2.
/// Idempotent; throws if the input carries a nonzero mean mode.
SpectralField project_divergence_free(const SpectralField& f);

/// (u.grad)u evaluated pseudo-spectrally in divergence form
/// i xi_i (u_i u_j)^, alias-free on the retained cube, exactly Hermitian.
ConvectionTerm convection_term(const SpectralField& u);

/// Projected convection term P((u.grad)u).
SpectralField nonlinear_term(const SpectralField& u);

/// amplitude * (sin x cos y cos z, -cos x sin y cos z, 0).
SpectralField taylor_green(const Grid& grid, double amplitude);

/// Divergence-free field with independent complex Gaussian modes damped by
/// exp(-decay_rate |xi|^2). Fully determined by (grid, seed, decay_rate).
SpectralField random_smooth(const Grid& grid, std::uint64_t seed, double decay_rate);

/// Mode-wise multiplication by -|xi|^2.
SpectralField laplacian(const SpectralField& u);

/// Lattice-sum pairing sum_xi Re(conj(ahat_xi) . bhat_xi); agrees with the
/// physical-space L2 inner product up to the fixed (2*pi)^3 volume factor.
double l2_inner(const SpectralField& a, const SpectralField& b);

/// Replaces each conjugate pair by its Hermitian average and pins the mean
/// mode to zero, making reality_residual exactly 0.
void symmetrize(SpectralField& f);

}  // namespace blowlab
