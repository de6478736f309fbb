#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace encoderlab {

/// One output record; the CSV columns, in order.
struct ResultRow {
    std::string run_id;
    std::string backend;
    int L = 0;
    uint64_t seed = 0;
    double t = 0;
    std::string observable;
    double value = 0;
    double stderr_ = 0;
    uint64_t n_samples = 0;
};

/// 17-significant-digit float rendering shared by both formats, so a value
/// round-trips bit-exactly.
std::string format_double(double v);

/// FNV-1a hex digest of a canonical config string.
std::string run_id_for(const std::string& canonical_config);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace encoderlab
