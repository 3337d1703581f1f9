#include "blowlab/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

#include "blowlab/util.hpp"

namespace blowlab {

namespace {

// In-place complex 3D FFT over an m^3 work array, one axis at a time. Each
// worker owns a contiguous range of lines and its own kissfft plan, so the
// output is independent of the thread count.
void fft3_inplace(Eigen::VectorXcd& data, int m, bool forward) {
    const long m2 = static_cast<long>(m) * m;
    for (int axis = 0; axis < 3; ++axis) {
        const long stride = axis == 0 ? m2 : axis == 1 ? m : 1;
        parallel_for_blocks(m2, [&](long lo, long hi) {
            Eigen::FFT<double> fft;
            fft.SetFlag(Eigen::FFT<double>::Unscaled);
            Eigen::VectorXcd line(m), out(m);
            for (long l = lo; l < hi; ++l) {
                long base;
                if (axis == 0)
                    base = l;
                else if (axis == 1)
                    base = (l / m) * m2 + (l % m);
                else
                    base = l * m;
                for (int j = 0; j < m; ++j) line(j) = data(base + j * stride);
                if (forward)
                    fft.fwd(out, line);
                else
                    fft.inv(out, line);
                for (int j = 0; j < m; ++j) data(base + j * stride) = out(j);
            }
        });
    }
}

inline int wrap(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace

Eigen::VectorXd spectral_to_physical(const Grid& grid, const Eigen::VectorXcd& coeffs) {
    const int m = grid.transform_size();
    const long m3 = static_cast<long>(m) * m * m;
    Eigen::VectorXcd work = Eigen::VectorXcd::Zero(m3);
    const int c = grid.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                const std::complex<double> v = coeffs(grid.index(kx, ky, kz));
                if (v == 0.0) continue;
                const long w = (static_cast<long>(wrap(kx, m)) * m + wrap(ky, m)) * m +
                               wrap(kz, m);
                work(w) = v;
            }
    fft3_inplace(work, m, /*forward=*/false);
    return work.real();
}

Eigen::VectorXcd physical_to_spectral(const Grid& grid, const Eigen::VectorXd& values) {
    const int m = grid.transform_size();
    const long m3 = static_cast<long>(m) * m * m;
    Eigen::VectorXcd work(m3);
    work.real() = values;
    work.imag().setZero();
    fft3_inplace(work, m, /*forward=*/true);
    const double scale = 1.0 / static_cast<double>(m3);
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(grid.lattice_size());
    const int c = grid.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                const long w = (static_cast<long>(wrap(kx, m)) * m + wrap(ky, m)) * m +
                               wrap(kz, m);
                coeffs(grid.index(kx, ky, kz)) = scale * work(w);
            }
    return coeffs;
}

PhysicalField synthesize(const SpectralField& field) {
    PhysicalField phys;
    phys.grid = field.grid();
    phys.points = field.grid().transform_size();
    for (int i = 0; i < 3; ++i)
        phys.comp[i] = spectral_to_physical(field.grid(), field.comp(i));
    return phys;
}

SpectralField analyze(const PhysicalField& phys) {
    SpectralField field(phys.grid);
    for (int i = 0; i < 3; ++i)
        field.comp(i) = physical_to_spectral(phys.grid, phys.comp[i]);
    return field;
}

double PhysicalField::max_speed() const {
    const long n = comp[0].size();
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const double s2 = comp[0](i) * comp[0](i) + comp[1](i) * comp[1](i) +
                          comp[2](i) * comp[2](i);
        if (s2 > worst) worst = s2;
    }
    return std::sqrt(worst);
}

}  // namespace blowlab
