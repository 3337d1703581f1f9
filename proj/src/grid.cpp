#include "blowlab/grid.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace blowlab {

Grid Grid::cubic(int n_modes) {
    if (n_modes < 8 || n_modes % 2 != 0)
        throw std::invalid_argument("grid: n_modes must be even and >= 8");
    Grid g;
    g.n_modes = n_modes;
    g.domain_length = kTwoPi;
    g.dealias_cutoff = n_modes / 3;
    return g;
}

const ModeTable& mode_table(const Grid& grid) {
    static std::map<int, ModeTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(grid.dealias_cutoff);
    if (it != cache.end()) return it->second;

    ModeTable t;
    long n = grid.lattice_size();
    t.kx.resize(n);
    t.ky.resize(n);
    t.kz.resize(n);
    t.k2.resize(n);
    for (long i = 0; i < n; ++i) {
        auto k = grid.wavevector(i);
        t.kx[i] = k[0];
        t.ky[i] = k[1];
        t.kz[i] = k[2];
        double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        t.k2[i] = k2 == 0.0 ? 1.0 : k2;
    }
    return cache.emplace(grid.dealias_cutoff, std::move(t)).first->second;
}

}  // namespace blowlab
