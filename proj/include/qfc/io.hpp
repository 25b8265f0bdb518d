#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "qfc/experiments.hpp"
#include "qfc/green.hpp"

namespace qfc {

// Binary Green-function file, little-endian:
//   "QFCGREEN" | u32 version | u64 n | f64 dt, t_start, lambda_s, lambda_r
// then the blocks ss, sr, rs, rr, each row-major with interleaved re/im f64.
inline constexpr std::string_view kGreenMagic = "QFCGREEN";
inline constexpr std::uint32_t kGreenFormatVersion = 1;

void dump_matrix(const GreenFunction& g, const std::filesystem::path& path);

// Throws IoError on a bad magic, a version mismatch (naming both versions),
// or a short or oversized file. Nothing is returned on failure.
GreenFunction load_matrix(const std::filesystem::path& path);

// %.17g-style text; 17 significant digits round-trip every double.
std::string format_number(double v);

// Header row of column names, then one line per row; LF line endings.
void write_csv(std::ostream& out, const ExperimentResult& result);
// Two columns, key and value.
void write_scalars_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace qfc
