#include "blowlab/sobolev.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "blowlab/solver.hpp"
#include "blowlab/util.hpp"

namespace blowlab {

double hs_norm(const SpectralField& u, double s) {
    if (!std::isfinite(s) || s < 0.0 || s > 4.0)
        throw std::invalid_argument("hs_norm: s must be finite and in [0, 4]");
    const Grid& g = u.grid();
    const ModeTable& mt = mode_table(g);
    const long origin = g.index(0, 0, 0);
    double acc = 0.0;
    for (long idx = 0; idx < g.lattice_size(); ++idx) {
        const double mag2 = std::norm(u.comp(0)(idx)) + std::norm(u.comp(1)(idx)) +
                            std::norm(u.comp(2)(idx));
        if (mag2 == 0.0) continue;
        // |xi|^{2s} = (|xi|^2)^s; the table holds 1 at the origin, which
        // would wrongly weight a (forbidden) mean mode, so skip it.
        if (idx == origin) continue;
        acc += (s == 0.0 ? 1.0 : std::pow(mt.k2(idx), s)) * mag2;
    }
    return std::sqrt(acc);
}

std::vector<NormSample> norm_series(const Trajectory& traj, double s) {
    if (traj.snapshots.empty()) throw std::invalid_argument("empty trajectory");
    std::vector<NormSample> out;
    out.reserve(traj.snapshots.size());
    for (const Snapshot& snap : traj.snapshots)
        out.push_back({snap.t, s, hs_norm(snap.field, s)});
    return out;
}

void write_norm_series_csv(const std::vector<NormSample>& samples,
                           const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,s,value\n";
    for (const NormSample& ns : samples)
        out << format_g17(ns.t) << ',' << format_g17(ns.s) << ','
            << format_g17(ns.value) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace blowlab
