#pragma once

// Benchmark reports.
//
// CSV columns: scene,camera,method,sigma,psnr_db,ssim,seconds. Per-scene rows
// come first, then one row per method whose scene field is "AVERAGE".
// Numbers are printed with six decimals. The Markdown table carries the same
// rows and bolds the best aggregate value of each metric column.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nltd/bench.hpp"

namespace nltd {

inline constexpr const char* kAggregateScene = "AVERAGE";

enum class ReportFormat { csv, markdown };

[[nodiscard]] std::string to_csv(const BenchmarkRun& run);
[[nodiscard]] std::string to_markdown(const BenchmarkRun& run);

// Inverse of to_csv. Throws IoError on malformed input.
[[nodiscard]] BenchmarkRun parse_csv(std::istream& in);

// Throws IoError if the file cannot be written.
void emit_report(const BenchmarkRun& run, const std::filesystem::path& path, ReportFormat format);

}  // namespace nltd
