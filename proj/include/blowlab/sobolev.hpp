#pragma once

#include <string>
#include <vector>

#include "blowlab/spectral_field.hpp"

namespace blowlab {

struct Trajectory;

struct NormSample {
    double t = 0.0;
    double s = 0.0;
    double value = 0.0;
};

/// Homogeneous Sobolev norm sqrt(sum_xi |xi|^{2s} |uhat_xi|^2) over the
/// retained lattice (no volume factor). s is restricted to [0, 4].
double hs_norm(const SpectralField& u, double s);

/// One sample per snapshot, ordered by time.
std::vector<NormSample> norm_series(const Trajectory& traj, double s);

/// CSV with header `t,s,value`, 17 significant digits per entry.
void write_norm_series_csv(const std::vector<NormSample>& samples,
                           const std::string& path);

}  // namespace blowlab
