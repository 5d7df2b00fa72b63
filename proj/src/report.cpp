#include "nltd/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace nltd {
namespace {

constexpr const char* kHeader = "scene,camera,method,sigma,psnr_db,ssim,seconds";

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw IoError("malformed number '" + s + "' in report");
  }
  if (used != s.size()) throw IoError("malformed number '" + s + "' in report");
  return v;
}

void append_row(std::string& out, const std::string& scene, const std::string& camera,
                const std::string& method, double sigma, double psnr_db, double ssim,
                double seconds) {
  out += csv_field(scene) + ',' + csv_field(camera) + ',' + csv_field(method) + ',' +
         fixed(sigma, 6) + ',' + fixed(psnr_db, 6) + ',' + fixed(ssim, 6) + ',' +
         fixed(seconds, 6) + '\n';
}

}  // namespace

std::string to_csv(const BenchmarkRun& run) {
  std::string out = std::string(kHeader) + '\n';
  for (const SceneResult& r : run.rows) {
    append_row(out, r.scene, r.camera, r.method, r.sigma, r.psnr_db, r.ssim, r.seconds);
  }
  for (const MethodAggregate& a : run.aggregates) {
    append_row(out, kAggregateScene, "", a.method, a.sigma, a.psnr_db, a.ssim, a.seconds);
  }
  return out;
}

BenchmarkRun parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw IoError("report header missing");
  BenchmarkRun run;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw IoError("report row has " + std::to_string(f.size()) + " fields");
    if (f[0] == kAggregateScene) {
      MethodAggregate a{f[2], parse_number(f[3]), parse_number(f[4]), parse_number(f[5]),
                        parse_number(f[6]), 0};
      run.aggregates.push_back(std::move(a));
    } else {
      run.rows.push_back({f[0], f[1], f[2], parse_number(f[3]), parse_number(f[4]),
                          parse_number(f[5]), parse_number(f[6])});
    }
  }
  for (MethodAggregate& a : run.aggregates) {
    for (const SceneResult& r : run.rows) a.scenes += r.method == a.method ? 1 : 0;
  }
  return run;
}

std::string to_markdown(const BenchmarkRun& run) {
  std::ostringstream out;
  out << "| Scene | Camera | Method | Sigma | PSNR (dB) | SSIM | Time (s) |\n"
      << "|---|---|---|---:|---:|---:|---:|\n";
  for (const SceneResult& r : run.rows) {
    out << "| " << r.scene << " | " << r.camera << " | " << r.method << " | " << fixed(r.sigma, 2)
        << " | " << fixed(r.psnr_db, 2) << " | " << fixed(r.ssim, 4) << " | "
        << fixed(r.seconds, 2) << " |\n";
  }

  // Best per column compares the printed values, so ties on screen bold together.
  auto best = [&](auto field, bool larger_is_better, int digits) {
    std::string winner;
    double best_v = 0.0;
    for (const MethodAggregate& a : run.aggregates) {
      const double v = std::stod(fixed(field(a), digits));
      if (winner.empty() || (larger_is_better ? v > best_v : v < best_v)) {
        best_v = v;
        winner = fixed(v, digits);
      }
    }
    return winner;
  };
  const std::string best_psnr = best([](const MethodAggregate& a) { return a.psnr_db; }, true, 2);
  const std::string best_ssim = best([](const MethodAggregate& a) { return a.ssim; }, true, 4);
  const std::string best_time = best([](const MethodAggregate& a) { return a.seconds; }, false, 2);
  auto cell = [](const std::string& v, const std::string& b) {
    return v == b ? "**" + v + "**" : v;
  };
  for (const MethodAggregate& a : run.aggregates) {
    out << "| **Average** |  | " << a.method << " | " << fixed(a.sigma, 2) << " | "
        << cell(fixed(a.psnr_db, 2), best_psnr) << " | " << cell(fixed(a.ssim, 4), best_ssim)
        << " | " << cell(fixed(a.seconds, 2), best_time) << " |\n";
  }
  return out.str();
}

void emit_report(const BenchmarkRun& run, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << (format == ReportFormat::csv ? to_csv(run) : to_markdown(run));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace nltd
