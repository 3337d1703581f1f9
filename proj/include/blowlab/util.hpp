#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace blowlab {

/// Renders a double with 17 significant digits (round-trip safe), used by
/// every CSV writer so repeated runs are byte-identical.
std::string format_g17(double v);

/// FNV-1a 64-bit content hash, rendered as 16 lowercase hex chars.
std::string fnv1a64_hex(const std::string& bytes);

/// Thread budget for internal data parallelism: BLOWLAB_THREADS if set
/// (clamped to >= 1), else hardware_concurrency clamped to [1, 8].
int thread_budget();

/// Test hook: force the thread budget (0 restores env-driven behaviour).
void set_thread_override(int n);

/// Runs body(begin, end) over a partition of [0, n) into contiguous blocks,
/// one per worker. Each index is owned by exactly one block, so results are
/// identical for any thread count.
void parallel_for_blocks(long n, const std::function<void(long, long)>& body);

std::string read_file_bytes(const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;  // -1 if absent
};

/// Parses a numeric CSV with a header line. Throws std::runtime_error on
/// missing file or ragged rows.
CsvTable read_csv(const std::string& path);

}  // namespace blowlab
