#pragma once

#include "blowlab/spectral_field.hpp"

namespace blowlab {

/// Collocation values of a vector field on the uniform points^3 grid
/// x_j = 2*pi*j/points, flattened as (ix*points + iy)*points + iz.
struct PhysicalField {
    Grid grid;
    int points = 0;
    std::array<Eigen::VectorXd, 3> comp;

    /// Largest pointwise speed |u(x)| over the grid.
    double max_speed() const;
};

/// Scalar inverse transform: lattice coefficients -> real values on the
/// grid.transform_size()^3 collocation grid.
Eigen::VectorXd spectral_to_physical(const Grid& grid, const Eigen::VectorXcd& coeffs);

/// Scalar forward transform with 1/M^3 normalisation, truncated back to the
/// retained lattice. Round-trips spectral_to_physical exactly (up to
/// roundoff) because the collocation grid oversamples the cutoff.
Eigen::VectorXcd physical_to_spectral(const Grid& grid, const Eigen::VectorXd& values);

PhysicalField synthesize(const SpectralField& field);
SpectralField analyze(const PhysicalField& phys);

}  // namespace blowlab
