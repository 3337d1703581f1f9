#include "blowlab/spectral_ops.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "blowlab/transform.hpp"

namespace blowlab {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

SpectralField project_divergence_free(const SpectralField& f) {
    const Grid& g = f.grid();
    const long origin = g.index(0, 0, 0);
    for (int i = 0; i < 3; ++i)
        if (f.comp(i)(origin) != 0.0)
            throw std::invalid_argument("project: nonzero mean mode");

    const ModeTable& mt = mode_table(g);
    SpectralField out(g);
    for (int i = 0; i < 3; ++i) out.comp(i) = f.comp(i);
    // xi (xi.uhat)/|xi|^2; the k2 table stores 1 at the origin, where the
    // coefficient is zero anyway.
    Eigen::VectorXcd dot = (mt.kx.cast<std::complex<double>>().cwiseProduct(out.comp(0)) +
                            mt.ky.cast<std::complex<double>>().cwiseProduct(out.comp(1)) +
                            mt.kz.cast<std::complex<double>>().cwiseProduct(out.comp(2)))
                               .cwiseQuotient(mt.k2.cast<std::complex<double>>());
    out.comp(0) -= mt.kx.cast<std::complex<double>>().cwiseProduct(dot);
    out.comp(1) -= mt.ky.cast<std::complex<double>>().cwiseProduct(dot);
    out.comp(2) -= mt.kz.cast<std::complex<double>>().cwiseProduct(dot);
    return out;
}

ConvectionTerm convection_term(const SpectralField& u) {
    const Grid& g = u.grid();
    PhysicalField phys = synthesize(u);

    // Six distinct products u_i u_j; with div u = 0 the convection term is
    // d_i (u_i u_j), i.e. i xi . w_j per component in Fourier space.
    static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    std::array<Eigen::VectorXcd, 6> what;
    for (int p = 0; p < 6; ++p) {
        Eigen::VectorXd prod =
            phys.comp[pairs[p][0]].cwiseProduct(phys.comp[pairs[p][1]]);
        what[p] = physical_to_spectral(g, prod);
    }
    auto w = [&](int i, int j) -> const Eigen::VectorXcd& {
        if (i > j) std::swap(i, j);
        if (i == 0) return what[j];
        if (i == 1) return what[2 + j];
        return what[5];
    };

    const ModeTable& mt = mode_table(g);
    ConvectionTerm conv{SpectralField(g), phys.max_speed()};
    for (int j = 0; j < 3; ++j)
        conv.term.comp(j) = kI * (mt.kx.cast<std::complex<double>>().cwiseProduct(w(0, j)) +
                                  mt.ky.cast<std::complex<double>>().cwiseProduct(w(1, j)) +
                                  mt.kz.cast<std::complex<double>>().cwiseProduct(w(2, j)));
    symmetrize(conv.term);
    return conv;
}

SpectralField nonlinear_term(const SpectralField& u) {
    return project_divergence_free(convection_term(u).term);
}

SpectralField taylor_green(const Grid& grid, double amplitude) {
    if (!std::isfinite(amplitude))
        throw std::invalid_argument("taylor_green: amplitude must be finite");
    SpectralField f(grid);
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1})
            for (int s3 : {-1, 1}) {
                // sin x cos y cos z -> -i s1/8, cos x sin y cos z -> -i s2/8
                Eigen::Vector3cd v(-kI * (amplitude * s1 / 8.0),
                                   kI * (amplitude * s2 / 8.0), 0.0);
                f.set_mode(s1, s2, s3, v);
            }
    return f;
}

namespace {

// Deterministic standard normals from raw mt19937_64 output (Box-Muller on
// 53-bit uniforms), independent of any library distribution internals.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 =
            (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;  // (0,1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;  // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

SpectralField random_smooth(const Grid& grid, std::uint64_t seed, double decay_rate) {
    if (!(decay_rate >= 0.0))
        throw std::invalid_argument("random_smooth: decay_rate must be >= 0");
    NormalStream normals(seed);
    SpectralField f(grid);
    const int c = grid.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                if (!lex_positive(kx, ky, kz)) continue;
                const double k2 =
                    double(kx) * kx + double(ky) * ky + double(kz) * kz;
                const double scale = std::exp(-decay_rate * k2);
                Eigen::Vector3cd v;
                for (int i = 0; i < 3; ++i)
                    v(i) = scale * std::complex<double>(normals.next(), normals.next());
                f.set_mode_pair(kx, ky, kz, v);
            }
    return project_divergence_free(f);
}

SpectralField laplacian(const SpectralField& u) {
    const ModeTable& mt = mode_table(u.grid());
    const long origin = u.grid().index(0, 0, 0);
    SpectralField out(u.grid());
    for (int i = 0; i < 3; ++i) {
        out.comp(i) = -u.comp(i).cwiseProduct(mt.k2.cast<std::complex<double>>());
        out.comp(i)(origin) = 0.0;
    }
    return out;
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXcd& x = a.comp(i);
        const Eigen::VectorXcd& y = b.comp(i);
        for (long idx = 0; idx < x.size(); ++idx)
            acc += std::real(std::conj(x(idx)) * y(idx));
    }
    return acc;
}

void symmetrize(SpectralField& f) {
    const Grid& g = f.grid();
    const long origin = g.index(0, 0, 0);
    const int c = g.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                if (!lex_positive(kx, ky, kz)) continue;
                const long idx = g.index(kx, ky, kz);
                const long mi = g.index(-kx, -ky, -kz);
                for (int i = 0; i < 3; ++i) {
                    const std::complex<double> avg =
                        0.5 * (f.comp(i)(idx) + std::conj(f.comp(i)(mi)));
                    f.comp(i)(idx) = avg;
                    f.comp(i)(mi) = std::conj(avg);
                }
            }
    for (int i = 0; i < 3; ++i) f.comp(i)(origin) = 0.0;
}

}  // namespace blowlab
