#include "blowlab/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace blowlab {

namespace {

constexpr char kMagic[8] = {'B', 'L', 'W', 'L', 'A', 'B', '0', '1'};

struct ModeRecord {
    std::int32_t k[3];
    double re[3];
    double im[3];
};

template <typename T>
void put(std::string& buf, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf.append(p, sizeof(T));
}

template <typename T>
T take(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size())
        throw std::runtime_error("checkpoint: truncated file");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_checkpoint(const SpectralField& field, const std::string& path) {
    const Grid& g = field.grid();
    std::vector<ModeRecord> records;
    const int c = g.dealias_cutoff;
    for (int kx = -c; kx <= c; ++kx)
        for (int ky = -c; ky <= c; ++ky)
            for (int kz = -c; kz <= c; ++kz) {
                if (!lex_positive(kx, ky, kz)) continue;
                const Eigen::Vector3cd v = field.mode(kx, ky, kz);
                if (v.isZero(0.0)) continue;
                ModeRecord r;
                r.k[0] = kx;
                r.k[1] = ky;
                r.k[2] = kz;
                for (int i = 0; i < 3; ++i) {
                    r.re[i] = v(i).real();
                    r.im[i] = v(i).imag();
                }
                records.push_back(r);
            }

    std::string buf;
    buf.append(kMagic, sizeof(kMagic));
    put(buf, static_cast<std::uint32_t>(g.n_modes));
    put(buf, static_cast<std::uint64_t>(records.size()));
    for (const ModeRecord& r : records) {
        for (int i = 0; i < 3; ++i) put(buf, r.k[i]);
        for (int i = 0; i < 3; ++i) {
            put(buf, r.re[i]);
            put(buf, r.im[i]);
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

SpectralField read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

    std::size_t off = 0;
    if (buf.size() < sizeof(kMagic) ||
        std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    off += sizeof(kMagic);

    const auto n_modes = take<std::uint32_t>(buf, off);
    const auto count = take<std::uint64_t>(buf, off);
    Grid grid = Grid::cubic(static_cast<int>(n_modes));
    SpectralField field(grid);
    for (std::uint64_t r = 0; r < count; ++r) {
        std::int32_t k[3];
        for (auto& ki : k) ki = take<std::int32_t>(buf, off);
        Eigen::Vector3cd v;
        for (int i = 0; i < 3; ++i) {
            const double re = take<double>(buf, off);
            const double im = take<double>(buf, off);
            v(i) = {re, im};
        }
        if (!grid.in_lattice(k[0], k[1], k[2]))
            throw std::runtime_error("checkpoint: mode outside lattice in " + path);
        if (!lex_positive(k[0], k[1], k[2]))
            throw std::runtime_error("checkpoint: non-canonical mode in " + path);
        field.set_mode_pair(k[0], k[1], k[2], v);
    }
    if (off != buf.size())
        throw std::runtime_error("checkpoint: trailing bytes in " + path);
    return field;
}

}  // namespace blowlab
