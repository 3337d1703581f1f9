#pragma once

#include <Eigen/Core>

#include <complex>

#include "blowlab/grid.hpp"

namespace blowlab {

/// Truncated Fourier representation of a periodic vector field,
/// u(x) = sum_xi uhat_xi e^{i xi.x}, stored component-major over the full
/// symmetric lattice (origin slot present but pinned to zero for valid
/// fields). Immutable-by-convention value type: operations return copies.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& grid);

    const Grid& grid() const { return grid_; }
    Eigen::VectorXcd& comp(int i) { return comp_[i]; }
    const Eigen::VectorXcd& comp(int i) const { return comp_[i]; }

    Eigen::Vector3cd mode(int kx, int ky, int kz) const;
    void set_mode(int kx, int ky, int kz, const Eigen::Vector3cd& value);
    /// Sets uhat_xi = value and uhat_{-xi} = conj(value) in one call.
    void set_mode_pair(int kx, int ky, int kz, const Eigen::Vector3cd& value);

    /// Largest |xi . uhat_xi| / |uhat_xi| over nonzero modes.
    double divergence_residual() const;
    /// Largest |uhat_xi - conj(uhat_{-xi})| over the lattice.
    double reality_residual() const;
    /// Largest coefficient magnitude (vector 2-norm per mode).
    double max_abs() const;
    bool finite() const;

    SpectralField& operator*=(double s);

  private:
    Grid grid_;
    std::array<Eigen::VectorXcd, 3> comp_;
};

}  // namespace blowlab
