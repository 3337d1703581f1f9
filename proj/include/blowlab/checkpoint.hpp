#pragma once

#include <string>

#include "blowlab/spectral_field.hpp"

namespace blowlab {

/// Binary snapshot format, little-endian:
///   magic "BLWLAB01" | n_modes u32 | count u64
///   count records of { xi: 3 x i32, uhat: 6 x f64 (re,im per component) }
/// Only lexicographically positive modes with a nonzero coefficient are
/// written; the reader restores the conjugate partners.
void write_checkpoint(const SpectralField& field, const std::string& path);

SpectralField read_checkpoint(const std::string& path);

}  // namespace blowlab
