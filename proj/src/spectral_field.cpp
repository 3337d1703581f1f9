#include "blowlab/spectral_field.hpp"

#include <cmath>

namespace blowlab {

SpectralField::SpectralField(const Grid& grid) : grid_(grid) {
    const long n = grid_.lattice_size();
    for (auto& c : comp_) c = Eigen::VectorXcd::Zero(n);
}

Eigen::Vector3cd SpectralField::mode(int kx, int ky, int kz) const {
    const long idx = grid_.index(kx, ky, kz);
    return {comp_[0](idx), comp_[1](idx), comp_[2](idx)};
}

void SpectralField::set_mode(int kx, int ky, int kz, const Eigen::Vector3cd& value) {
    const long idx = grid_.index(kx, ky, kz);
    for (int i = 0; i < 3; ++i) comp_[i](idx) = value(i);
}

void SpectralField::set_mode_pair(int kx, int ky, int kz, const Eigen::Vector3cd& value) {
    set_mode(kx, ky, kz, value);
    set_mode(-kx, -ky, -kz, value.conjugate());
}

double SpectralField::divergence_residual() const {
    const ModeTable& mt = mode_table(grid_);
    double worst = 0.0;
    for (long idx = 0; idx < grid_.lattice_size(); ++idx) {
        const std::complex<double> ux = comp_[0](idx);
        const std::complex<double> uy = comp_[1](idx);
        const std::complex<double> uz = comp_[2](idx);
        const double mag = std::sqrt(std::norm(ux) + std::norm(uy) + std::norm(uz));
        if (mag == 0.0) continue;
        const std::complex<double> div =
            mt.kx(idx) * ux + mt.ky(idx) * uy + mt.kz(idx) * uz;
        worst = std::max(worst, std::abs(div) / mag);
    }
    return worst;
}

double SpectralField::reality_residual() const {
    double worst = 0.0;
    const int c = grid_.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                const long idx = grid_.index(kx, ky, kz);
                const long mi = grid_.index(-kx, -ky, -kz);
                for (int i = 0; i < 3; ++i)
                    worst = std::max(worst,
                                     std::abs(comp_[i](idx) - std::conj(comp_[i](mi))));
            }
    return worst;
}

double SpectralField::max_abs() const {
    double worst = 0.0;
    for (long idx = 0; idx < grid_.lattice_size(); ++idx) {
        const double mag = std::sqrt(std::norm(comp_[0](idx)) + std::norm(comp_[1](idx)) +
                                     std::norm(comp_[2](idx)));
        worst = std::max(worst, mag);
    }
    return worst;
}

bool SpectralField::finite() const {
    for (const auto& c : comp_)
        if (!c.allFinite()) return false;
    return true;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : comp_) c *= s;
    return *this;
}

}  // namespace blowlab
