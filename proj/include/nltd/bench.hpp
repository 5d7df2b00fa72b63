#pragma once

// Dataset discovery and benchmark execution.
//
// Dataset layouts:
//   <root>/<scene>/noisy.png + <root>/<scene>/mean.png   (optional camera.txt)
//   <root>/<name>_real.png   + <root>/<name>_mean.png    (flat fallback)

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nltd/config.hpp"
#include "nltd/image.hpp"

namespace nltd {

struct ScenePair {
  std::string scene;
  std::filesystem::path noisy;
  std::filesystem::path ground_truth;
  std::string camera;
};

struct DatasetScan {
  std::vector<ScenePair> pairs;      // lexicographic by scene id
  std::vector<std::string> warnings; // one per skipped candidate
};

// Throws IoError if `root` is not a readable directory.
[[nodiscard]] DatasetScan scan_dataset(const std::filesystem::path& root);

struct SceneResult {
  std::string scene;
  std::string camera;
  std::string method;
  double sigma = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
};

struct MethodAggregate {
  std::string method;
  double sigma = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
  std::size_t scenes = 0;
};

struct SceneFailure {
  std::string scene;
  std::string method;
  std::string message;
};

struct BenchmarkRun {
  std::vector<SceneResult> rows;           // scene-major, methods in request order
  std::vector<MethodAggregate> aggregates; // one per method with at least one row
  std::vector<SceneFailure> failures;
};

struct BenchmarkOptions {
  std::vector<Method> methods;
  DenoiseConfig config;            // method field is overridden per entry
  std::vector<double> sigma_grid;  // non-empty: keep the best-PSNR sigma per image
  bool record_timing = true;       // false writes 0 seconds (byte-stable reports)
};

// Method label used in reports: "mstsvd", or "mstsvd_best" under a sigma grid.
[[nodiscard]] std::string method_label(Method m, bool tuned);

// Denoises one scene with every requested method and scores it.
[[nodiscard]] std::vector<SceneResult> evaluate_scene(const std::string& scene,
                                                      const std::string& camera,
                                                      const Image& noisy, const Image& clean,
                                                      const BenchmarkOptions& opts);

// Loads each pair and evaluates it; per-scene errors land in `failures`.
[[nodiscard]] BenchmarkRun run_benchmark(std::span<const ScenePair> pairs,
                                         const BenchmarkOptions& opts);

// Recomputes `aggregates` from `rows` (arithmetic means per method, in order
// of first appearance).
void compute_aggregates(BenchmarkRun& run);

}  // namespace nltd
