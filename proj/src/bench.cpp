#include "nltd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <system_error>

#include "nltd/denoise.hpp"
#include "nltd/metrics.hpp"
#include "nltd/png_io.hpp"

namespace fs = std::filesystem;

namespace nltd {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  return line;
}

// Empty string when the pair is usable, otherwise the reason it is not.
std::string validate_pair(const ScenePair& pair) {
  try {
    const ImageExtents a = read_png_extents(pair.noisy);
    const ImageExtents b = read_png_extents(pair.ground_truth);
    if (a.height != b.height || a.width != b.width) {
      return "extents differ (" + std::to_string(a.height) + "x" + std::to_string(a.width) +
             " vs " + std::to_string(b.height) + "x" + std::to_string(b.width) + ")";
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

DatasetScan scan_dataset(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("dataset root '" + root.string() + "' is not a directory");
  }

  std::vector<ScenePair> candidates;
  std::vector<fs::directory_entry> entries;
  for (const auto& e : fs::directory_iterator(root, ec)) entries.push_back(e);
  if (ec) throw IoError("cannot list '" + root.string() + "': " + ec.message());

  for (const auto& e : entries) {
    const std::string name = e.path().filename().string();
    if (e.is_directory()) {
      const fs::path noisy = e.path() / "noisy.png";
      const fs::path mean = e.path() / "mean.png";
      if (fs::exists(noisy) || fs::exists(mean)) {
        ScenePair p{name, noisy, mean, {}};
        if (fs::exists(e.path() / "camera.txt")) p.camera = read_first_line(e.path() / "camera.txt");
        candidates.push_back(std::move(p));
      }
    } else if (ends_with(name, "_real.png")) {
      const std::string id = name.substr(0, name.size() - std::string("_real.png").size());
      const std::string camera = id.substr(0, id.find('_'));
      candidates.push_back({id, e.path(), root / (id + "_mean.png"), camera});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const ScenePair& a, const ScenePair& b) { return a.scene < b.scene; });

  DatasetScan scan;
  for (auto& c : candidates) {
    if (std::string why = validate_pair(c); !why.empty()) {
      scan.warnings.push_back("skipping scene '" + c.scene + "': " + why);
    } else {
      scan.pairs.push_back(std::move(c));
    }
  }
  return scan;
}

std::string method_label(Method m, bool tuned) {
  std::string s(to_string(m));
  if (tuned) s += "_best";
  return s;
}

std::vector<SceneResult> evaluate_scene(const std::string& scene, const std::string& camera,
                                        const Image& noisy, const Image& clean,
                                        const BenchmarkOptions& opts) {
  if (!same_extents(noisy, clean)) throw DimensionError("noisy and clean images differ in extents");
  const bool tuned = !opts.sigma_grid.empty();
  const std::vector<double> sigmas = tuned ? opts.sigma_grid : std::vector{opts.config.sigma};

  std::vector<SceneResult> out;
  for (Method m : opts.methods) {
    SceneResult best;
    bool have = false;
    for (double sigma : sigmas) {
      DenoiseConfig cfg = opts.config;
      cfg.method = m;
      cfg.sigma = sigma;
      const auto t0 = std::chrono::steady_clock::now();
      const Image result = run_denoiser(noisy, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      const double p = psnr(result, clean);
      if (!have || p > best.psnr_db) {
        best = {scene, camera, method_label(m, tuned), sigma, p, ssim(result, clean),
                opts.record_timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0};
        have = true;
      }
    }
    out.push_back(std::move(best));
  }
  return out;
}

BenchmarkRun run_benchmark(std::span<const ScenePair> pairs, const BenchmarkOptions& opts) {
  if (opts.methods.empty()) throw ConfigError("benchmark needs at least one method");
  BenchmarkRun run;
  for (const ScenePair& pair : pairs) {
    try {
      const Image noisy = read_png(pair.noisy);
      const Image clean = read_png(pair.ground_truth);
      auto rows = evaluate_scene(pair.scene, pair.camera, noisy, clean, opts);
      run.rows.insert(run.rows.end(), rows.begin(), rows.end());
    } catch (const Error& e) {
      run.failures.push_back({pair.scene, "", e.what()});
    }
  }
  compute_aggregates(run);
  return run;
}

void compute_aggregates(BenchmarkRun& run) {
  run.aggregates.clear();
  std::map<std::string, std::size_t> index;
  for (const SceneResult& r : run.rows) {
    auto [it, inserted] = index.try_emplace(r.method, run.aggregates.size());
    if (inserted) run.aggregates.push_back({r.method});
    MethodAggregate& a = run.aggregates[it->second];
    a.sigma += r.sigma;
    a.psnr_db += r.psnr_db;
    a.ssim += r.ssim;
    a.seconds += r.seconds;
    ++a.scenes;
  }
  for (MethodAggregate& a : run.aggregates) {
    const double n = static_cast<double>(a.scenes);
    a.sigma /= n;
    a.psnr_db /= n;
    a.ssim /= n;
    a.seconds /= n;
  }
}

}  // namespace nltd
