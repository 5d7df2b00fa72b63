// nltd: color image denoising, noise synthesis and dataset benchmarks.
//
//   nltd denoise --method mstsvd --sigma 25 in.png out.png
//   nltd synth --sigma 25 --seed 7 clean.png noisy.png
//   nltd bench --dataset dir --methods mstsvd,cdct --report out.csv
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numerical failure.
// `--config file` reads key=value lines; keys of a subcommand are written
// under a [denoise] / [bench] / [synth] section. Flags override the file.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nltd/bench.hpp"
#include "nltd/denoise.hpp"
#include "nltd/noise.hpp"
#include "nltd/png_io.hpp"
#include "nltd/report.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

struct TuningFlags {
  std::size_t patch = 8;
  std::size_t window = 39;
  std::size_t group = 32;
  std::size_t step = 4;
  double lambda = 1.0;
  std::optional<double> resize;
  std::size_t threads = 0;
  std::string weighting = "uniform";
};

void add_tuning(CLI::App* cmd, TuningFlags& t) {
  cmd->add_option("--patch", t.patch, "Patch size")->capture_default_str();
  cmd->add_option("--window", t.window, "Search window side")->capture_default_str();
  cmd->add_option("--group", t.group, "Patches per group")->capture_default_str();
  cmd->add_option("--step", t.step, "Pixels between reference patches")->capture_default_str();
  cmd->add_option("--lambda", t.lambda, "Threshold multiplier")->capture_default_str();
  cmd->add_option("--resize", t.resize, "Denoise at this scale (0 < f < 1), then upscale");
  cmd->add_option("--threads", t.threads, "Worker threads (0: all cores)")->capture_default_str();
  cmd->add_option("--weighting", t.weighting, "Aggregation weights")
      ->check(CLI::IsMember({"uniform", "inverse-retained"}))
      ->capture_default_str();
}

nltd::DenoiseConfig make_config(const TuningFlags& t, double sigma, nltd::Method method) {
  nltd::DenoiseConfig cfg;
  cfg.patch_size = t.patch;
  cfg.search_window = t.window;
  cfg.group_size = t.group;
  cfg.step = t.step;
  cfg.lambda = t.lambda;
  cfg.resize = t.resize;
  cfg.threads = t.threads;
  cfg.sigma = sigma;
  cfg.method = method;
  cfg.weighting = t.weighting == "uniform" ? nltd::AggregationWeighting::uniform
                                           : nltd::AggregationWeighting::inverse_retained;
  cfg.validate();
  return cfg;
}

std::vector<nltd::Method> parse_methods(const std::string& list) {
  std::vector<nltd::Method> out;
  std::string cur;
  for (char c : list + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(nltd::parse_method(cur));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (out.empty()) throw nltd::ConfigError("no methods given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal transform-domain color image denoising"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  TuningFlags denoise_tuning;
  std::string method = "mstsvd";
  double denoise_sigma = 0.0;
  std::string in_path;
  std::string out_path;
  auto* denoise = app.add_subcommand("denoise", "Denoise one PNG image");
  denoise->add_option("--method", method, "Collaborative filter")
      ->check(CLI::IsMember({"mstsvd", "hosvd4d", "cdct"}))
      ->capture_default_str();
  denoise->add_option("--sigma", denoise_sigma, "Noise standard deviation (0-255 scale)")
      ->required();
  add_tuning(denoise, denoise_tuning);
  denoise->add_option("input", in_path, "Noisy PNG")->required();
  denoise->add_option("output", out_path, "Denoised PNG")->required();

  double synth_sigma = 0.0;
  std::uint64_t seed = 0;
  std::string clean_path;
  std::string noisy_path;
  auto* synth = app.add_subcommand("synth", "Add white Gaussian noise to a PNG image");
  synth->add_option("--sigma", synth_sigma, "Noise standard deviation")->required();
  synth->add_option("--seed", seed, "Generator seed")->required();
  synth->add_option("clean", clean_path, "Clean PNG")->required();
  synth->add_option("noisy", noisy_path, "Output PNG")->required();

  TuningFlags bench_tuning;
  std::string dataset;
  std::string methods = "mstsvd";
  std::string sigma_grid;
  double bench_sigma = 25.0;
  std::string report_path;
  std::string markdown_path;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Benchmark methods on a dataset of image pairs");
  bench->add_option("--dataset", dataset, "Dataset root")->required();
  bench->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
  bench->add_option("--sigma", bench_sigma, "Noise level when no grid is given")
      ->capture_default_str();
  bench->add_option("--sigma-grid", sigma_grid,
                    "Sigmas to try per image, keeping the best PSNR (e.g. 5,10,...,50)");
  bench->add_option("--report", report_path, "CSV report path")->required();
  bench->add_option("--markdown", markdown_path, "Markdown report path");
  bench->add_flag("--no-timing", no_timing, "Write 0 seconds so reports are byte-stable");
  add_tuning(bench, bench_tuning);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*denoise) {
      const auto cfg = make_config(denoise_tuning, denoise_sigma, nltd::parse_method(method));
      const nltd::Image noisy = nltd::read_png(in_path);
      nltd::write_png(out_path, nltd::run_denoiser(noisy, cfg));
    } else if (*synth) {
      if (!(synth_sigma >= 0.0)) throw nltd::ConfigError("sigma must be >= 0");
      const nltd::Image clean = nltd::read_png(clean_path);
      nltd::write_png(noisy_path, nltd::synth_awgn(clean, synth_sigma, seed));
    } else if (*bench) {
      nltd::BenchmarkOptions opts;
      opts.methods = parse_methods(methods);
      opts.config = make_config(bench_tuning, bench_sigma, opts.methods.front());
      if (!sigma_grid.empty()) opts.sigma_grid = nltd::parse_number_list(sigma_grid);
      opts.record_timing = !no_timing;

      const nltd::DatasetScan scan = nltd::scan_dataset(dataset);
      for (const auto& w : scan.warnings) std::cerr << "warning: " << w << '\n';
      const nltd::BenchmarkRun run = nltd::run_benchmark(scan.pairs, opts);
      for (const auto& f : run.failures) {
        std::cerr << "error: scene '" << f.scene << "': " << f.message << '\n';
      }
      nltd::emit_report(run, report_path, nltd::ReportFormat::csv);
      if (!markdown_path.empty()) {
        nltd::emit_report(run, markdown_path, nltd::ReportFormat::markdown);
      }
      std::cout << nltd::to_markdown(run);
    }
  } catch (const nltd::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const nltd::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const nltd::SizeError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const nltd::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::bad_alloc&) {
    std::cerr << "numerical failure: out of memory\n";
    return kNumeric;
  }
  return kOk;
}
