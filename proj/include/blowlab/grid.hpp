#pragma once

#include <Eigen/Core>

#include <array>

namespace blowlab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Cubic periodic Fourier lattice on [0, 2*pi]^3. Retained wavevectors are
/// the cube |xi_i| <= dealias_cutoff with the 2/3-rule cutoff floor(N/3).
struct Grid {
    int n_modes = 0;
    double domain_length = kTwoPi;
    int dealias_cutoff = 0;

    /// Validates n_modes (even, >= 8) and derives the dealias cutoff.
    static Grid cubic(int n_modes);

    int side() const { return 2 * dealias_cutoff + 1; }
    long lattice_size() const {
        long s = side();
        return s * s * s;
    }
    bool in_lattice(int kx, int ky, int kz) const {
        int c = dealias_cutoff;
        return kx >= -c && kx <= c && ky >= -c && ky <= c && kz >= -c && kz <= c;
    }
    long index(int kx, int ky, int kz) const {
        long s = side();
        int c = dealias_cutoff;
        return ((kx + c) * s + (ky + c)) * s + (kz + c);
    }
    std::array<int, 3> wavevector(long idx) const {
        long s = side();
        int c = dealias_cutoff;
        int kz = static_cast<int>(idx % s) - c;
        int ky = static_cast<int>((idx / s) % s) - c;
        int kx = static_cast<int>(idx / (s * s)) - c;
        return {kx, ky, kz};
    }
    long mirror_index(long idx) const {
        auto k = wavevector(idx);
        return index(-k[0], -k[1], -k[2]);
    }

    /// Physical grid used to evaluate quadratic products. Equals n_modes
    /// except when n_modes is a multiple of 3, where two extra points per
    /// axis keep the floor(N/3) cutoff exactly alias-free.
    int transform_size() const { return n_modes % 3 == 0 ? n_modes + 2 : n_modes; }

    bool operator==(const Grid&) const = default;
};

/// True when the first nonzero component of xi is positive (the
/// representative of each conjugate pair).
inline bool lex_positive(int kx, int ky, int kz) {
    if (kx != 0) return kx > 0;
    if (ky != 0) return ky > 0;
    return kz > 0;
}

/// Per-lattice-site wavevector components as flat Eigen arrays, memoized per
/// cutoff. k2 holds |xi|^2 with the origin entry set to 1 so that mode-wise
/// divisions never see a zero (the origin coefficient is pinned to zero).
struct ModeTable {
    Eigen::VectorXd kx, ky, kz, k2;
};

const ModeTable& mode_table(const Grid& grid);

}  // namespace blowlab
