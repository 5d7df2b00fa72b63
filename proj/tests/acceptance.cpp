// Acceptance suite. Prints one line per criterion and exits non-zero when any
// criterion fails.
//
//   acceptance <nltd-cli> <test-data-dir>
//
// Criterion 6 compares against published averages only when NLTD_DATASET1
// points at the cropped 15-image dataset; otherwise that half is skipped.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <Eigen/QR>

#include "nltd/bench.hpp"
#include "nltd/color.hpp"
#include "nltd/denoise.hpp"
#include "nltd/metrics.hpp"
#include "nltd/noise.hpp"
#include "nltd/patch.hpp"
#include "nltd/png_io.hpp"
#include "nltd/resize.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace nltd;
using nltd::testing::random_tensor;
using nltd::testing::relative_error;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int g_failed = 0;

void report(int id, const std::string& title, const std::string& status, const Check& c) {
  std::printf("criterion %d [%s] %s", id, status.c_str(), title.c_str());
  for (const auto& n : c.notes) std::printf("; %s", n.c_str());
  std::printf("\n");
  for (const auto& f : c.failures) std::printf("    failed: %s\n", f.c_str());
  std::fflush(stdout);
}

void finish(int id, const std::string& title, const Check& c) {
  const bool ok = c.failures.empty();
  if (!ok) ++g_failed;
  report(id, title, ok ? "PASS" : "FAIL", c);
}

struct TestImage {
  std::string name;
  Image clean;
};

std::vector<TestImage> load_images(const fs::path& dir) {
  std::vector<TestImage> out;
  for (const char* n : {"astronaut", "chelsea", "coffee"}) {
    out.push_back({n, read_png(dir / (std::string(n) + ".png"))});
  }
  return out;
}

constexpr std::array<Method, 3> kMethods{Method::mstsvd, Method::hosvd4d, Method::cdct};

DenoiseConfig method_config(Method m, double sigma) {
  DenoiseConfig cfg;
  cfg.method = m;
  cfg.sigma = sigma;
  return cfg;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealMatrix random_orthogonal(Eigen::Index n, std::mt19937& gen) {
  const RealMatrix a = nltd::testing::random_matrix(n, n, gen);
  return Eigen::HouseholderQR<RealMatrix>(a).householderQ();
}

// 1. sigma = 0 reproduces the input.
void criterion1(const std::vector<TestImage>& images) {
  Check c;
  double worst_filter = 0.0, worst_pipeline = 0.0, slowest = 0.0;
  for (const auto& im : images) {
    const Tensor lum = luminance(im.clean.tensor());
    for (Method m : kMethods) {
      const DenoiseConfig cfg = method_config(m, 0.0);
      for (const Coord& ref : {Coord{0, 0}, Coord{100, 37}, Coord{248, 248}}) {
        const Match match = match_block(lum, ref, cfg);
        const Tensor g = assemble_group(im.clean, match.coords, cfg.patch_size).data;
        worst_filter = std::max(worst_filter, relative_error(filter_group(g, cfg).group, g));
      }
      const auto t0 = Clock::now();
      const Image out = denoise(im.clean, cfg);
      const double secs = seconds_since(t0);
      slowest = std::max(slowest, secs);
      const double err = relative_error(out.tensor(), im.clean.tensor());
      worst_pipeline = std::max(worst_pipeline, err);
      c.expect(err <= 1e-8, im.name + " " + std::string(to_string(m)) + " pipeline error " + fmt("%.3g", err));
      c.expect(secs < 5.0, im.name + " " + std::string(to_string(m)) + " took " + fmt("%.2f s", secs));
    }
  }
  c.expect(worst_filter <= 1e-8, "filter round trip error " + fmt("%.3g", worst_filter));
  c.note("max filter rel err " + fmt("%.2e", worst_filter));
  c.note("max pipeline rel err " + fmt("%.2e", worst_pipeline));
  c.note("slowest run " + fmt("%.2f s", slowest));
  finish(1, "sigma=0 identity (3 filters + pipeline, 3 images)", c);
}

// 2. Tensor algebra on 100 random tensors.
void criterion2() {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937 gen(2024);
  std::uniform_int_distribution<std::size_t> ext(1, 5);
  double fold_err = 0.0, kron_err = 0.0, law_err = 0.0, parseval_err = 0.0, filter_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Shape shape(1 + static_cast<std::size_t>(trial) % 4);
    for (auto& e : shape) e = ext(gen);
    const Tensor t = random_tensor(shape, gen);
    const std::size_t order = shape.size();

    for (std::size_t n = 0; n < order; ++n) {
      fold_err = std::max(fold_err, nltd::testing::max_abs_diff(fold(unfold(t, n), n, shape), t));
    }

    std::vector<RealMatrix> u(order);
    Shape out_shape(order);
    for (std::size_t k = 0; k < order; ++k) {
      out_shape[k] = ext(gen);
      u[k] = nltd::testing::random_matrix(static_cast<Eigen::Index>(out_shape[k]),
                                          static_cast<Eigen::Index>(shape[k]), gen);
    }
    Tensor y = t;
    for (std::size_t k = 0; k < order; ++k) y = mode_product(y, u[k], k);
    for (std::size_t n = 0; n < order; ++n) {
      // First index fastest: later modes sit on the left of the Kronecker chain.
      RealMatrix chain = RealMatrix::Identity(1, 1);
      for (std::size_t k = order; k-- > 0;) {
        if (k != n) chain = kron(chain, u[k]);
      }
      const RealMatrix expected = u[n] * unfold(t, n) * chain.transpose();
      const double scale = std::max(1.0, expected.norm());
      kron_err = std::max(kron_err, (unfold(y, n) - expected).norm() / scale);

      const RealMatrix m = nltd::testing::random_matrix(static_cast<Eigen::Index>(ext(gen)),
                                                        static_cast<Eigen::Index>(shape[n]), gen);
      const RealMatrix lhs = unfold(mode_product(t, m, n), n);
      const RealMatrix rhs = m * unfold(t, n);
      law_err = std::max(law_err, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));

      const RealMatrix q = random_orthogonal(static_cast<Eigen::Index>(shape[n]), gen);
      const double norm = frobenius(t);
      parseval_err = std::max(parseval_err, std::abs(frobenius(mode_product(t, q, n)) - norm) / norm);
    }
  }
  // Filter coefficient chains on 100 random groups.
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 2 + static_cast<std::size_t>(trial) % 7;
    const Tensor g = random_tensor({p, p, 3, ext(gen) + 1}, gen, 0, 255);
    const double norm = frobenius(g);
    filter_err = std::max(filter_err, std::abs(filter_hosvd4d(g, method_config(Method::hosvd4d, 0)).coefficient_norm - norm) / norm);
    filter_err = std::max(filter_err, std::abs(filter_cdct(g, method_config(Method::cdct, 0)).coefficient_norm - norm) / norm);
    filter_err = std::max(filter_err, std::abs(filter_mstsvd(g, method_config(Method::mstsvd, 0)).coefficient_norm - std::sqrt(3.0) * norm) / (std::sqrt(3.0) * norm));
  }
  const double secs = seconds_since(t0);
  c.expect(fold_err == 0.0, "fold(unfold) not exact: " + fmt("%.3g", fold_err));
  c.expect(kron_err <= 1e-12, "Kronecker identity error " + fmt("%.3g", kron_err));
  c.expect(law_err <= 1e-12, "matricization error " + fmt("%.3g", law_err));
  c.expect(parseval_err <= 1e-12, "orthogonal invariance error " + fmt("%.3g", parseval_err));
  c.expect(filter_err <= 1e-8, "filter Parseval error " + fmt("%.3g", filter_err));
  c.expect(secs < 10.0, "took " + fmt("%.2f s", secs));
  c.note("kron " + fmt("%.1e", kron_err));
  c.note("matricization " + fmt("%.1e", law_err));
  c.note("Parseval " + fmt("%.1e", std::max(parseval_err, filter_err)));
  c.note(fmt("%.2f s", secs));
  finish(2, "algebra oracles on 100 random tensors", c);
}

// 3. Color DFT structure.
void criterion3() {
  Check c;
  const ComplexMatrix& u = dft3_color().forward;
  const double gram_err = (u * u.adjoint() - 3.0 * ComplexMatrix::Identity(3, 3)).norm();
  c.expect(gram_err <= 1e-12, "U U^H - 3I = " + fmt("%.3g", gram_err));

  std::mt19937 gen(33);
  double sym_err = 0.0, lum_err = 0.0, angle = 0.0, gray_angle = 0.0;
  static constexpr std::array<std::size_t, 1> kGroup{3};
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor g = random_tensor({8, 8, 3, 16}, gen, 0, 255);
    const ComplexTensor f = dft3_forward(g);
    const Tensor lum = luminance(g);
    const std::size_t plane = 64;
    for (std::size_t k = 0; k < 16; ++k) {
      for (std::size_t i = 0; i < plane; ++i) {
        const Complex c0 = f[i + plane * (3 * k)];
        const Complex c1 = f[i + plane * (1 + 3 * k)];
        const Complex c2 = f[i + plane * (2 + 3 * k)];
        sym_err = std::max(sym_err, std::abs(c1 - std::conj(c2)));
        lum_err = std::max(lum_err, std::abs(c0 - Complex(3.0 * lum[i + plane * k], 0.0)));
      }
    }
    const ComplexMatrix uf = hosvd_factors(f, kGroup).front();
    const ComplexMatrix ug = hosvd_factors(g, kGroup).front().cast<Complex>();
    for (Eigen::Index j = 0; j < 16; ++j) {
      angle = std::max(angle, nltd::testing::largest_principal_angle(ComplexMatrix(ug.col(j)),
                                                                     ComplexMatrix(uf.col(j))));
    }

    // Gray groups: the luminance-learned factor of MS-TSVD matches as well.
    Tensor gray = g;
    for (std::size_t k = 0; k < 16; ++k)
      for (std::size_t ch = 1; ch < 3; ++ch)
        for (std::size_t i = 0; i < plane; ++i) gray[i + plane * (ch + 3 * k)] = gray[i + plane * 3 * k];
    const RealMatrix ul = mstsvd_group_factor(gray);
    const RealMatrix ugray = hosvd_factors(dft3_forward(gray), kGroup).front().real();
    for (Eigen::Index j = 0; j < 16; ++j) {
      gray_angle = std::max(gray_angle, nltd::testing::largest_principal_angle(RealMatrix(ul.col(j)),
                                                                               RealMatrix(ugray.col(j))));
    }
  }
  c.expect(sym_err <= 1e-12, "conjugate symmetry error " + fmt("%.3g", sym_err));
  c.expect(lum_err <= 1e-12 * 255 * 3, "luminance channel error " + fmt("%.3g", lum_err));
  c.expect(angle < 1e-6, "group factor principal angle " + fmt("%.3g", angle));
  c.expect(gray_angle < 1e-6, "luminance group factor angle on gray groups " + fmt("%.3g", gray_angle));
  c.note("symmetry " + fmt("%.1e", sym_err));
  c.note("U U^H-3I " + fmt("%.1e", gram_err));
  c.note("max angle " + fmt("%.1e", angle) + " rad over 50 groups");
  finish(3, "Fourier structure (symmetry, U_FFT, luminance, group subspace)", c);
}

// 4. Denoising gain over three images and three noise levels.
void criterion4(const std::vector<TestImage>& images) {
  Check c;
  const std::array<std::pair<double, double>, 3> levels{{{15, 3.0}, {25, 5.0}, {50, 6.0}}};
  std::ostringstream table;
  double slowest = 0.0;
  for (const auto& [sigma, need] : levels) {
    double min_gain = 1e9;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const Image noisy = synth_awgn(images[i].clean, sigma, 1000 + i);
      const double base = psnr(noisy, images[i].clean);
      if (sigma == 25) {
        c.expect(std::abs(base - 20.17) < 0.2, images[i].name + " noisy PSNR " + fmt("%.2f", base));
      }
      for (Method m : kMethods) {
        const auto t0 = Clock::now();
        const Image out = denoise(noisy, method_config(m, sigma));
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        const double gain = psnr(out, images[i].clean) - base;
        min_gain = std::min(min_gain, gain);
        std::printf("    sigma %2.0f %-10s %-8s noisy %6.2f dB  out %6.2f dB  gain %5.2f dB  %5.2f s\n", sigma,
                    images[i].name.c_str(), std::string(to_string(m)).c_str(), base, base + gain, gain, secs);
        c.expect(gain >= need, images[i].name + " " + std::string(to_string(m)) + " sigma " + fmt("%.0f", sigma) +
                                   " gain " + fmt("%.2f dB", gain));
        c.expect(secs < 60.0, images[i].name + " " + std::string(to_string(m)) + " took " + fmt("%.1f s", secs));
      }
    }
    c.note("sigma " + fmt("%.0f", sigma) + " min gain " + fmt("%.2f dB", min_gain) + " (need " + fmt("%.0f", need) + ")");
  }
  c.note("slowest " + fmt("%.1f s", slowest));
  finish(4, "denoising gain at sigma 15/25/50", c);
}

// 5. Metric exactness.
void criterion5() {
  Check c;
  Image zero(16, 16), full(16, 16), a(16, 16), b(16, 16);
  for (double& v : full.tensor().data()) v = 255.0;
  for (double& v : a.tensor().data()) v = 100.0;
  for (double& v : b.tensor().data()) v = 100.0 + std::sqrt(65.025);
  const double p0 = psnr(zero, full);
  const double p30 = psnr(a, b);
  std::mt19937 gen(5);
  const Image r = nltd::testing::random_image(32, 32, gen);
  const double s = ssim(r, r);
  c.expect(p0 == 0.0, "psnr(0, 255) = " + fmt("%.17g", p0));
  c.expect(std::abs(p30 - 30.0) <= 1e-3, "psnr at mse 65.025 = " + fmt("%.6f", p30));
  c.expect(s == 1.0, "ssim(identical) = " + fmt("%.17g", s));
  c.note("psnr(0,255) " + fmt("%.3f", p0));
  c.note("psnr(mse 65.025) " + fmt("%.6f", p30));
  c.note("ssim " + fmt("%.6f", s));
  finish(5, "metric exactness", c);
}

// 6. Published averages (with data) and the sigma-grid protocol.
void criterion6(const std::vector<TestImage>& images) {
  Check c;
  BenchmarkOptions fixed;
  fixed.methods = {Method::mstsvd, Method::cdct};
  fixed.record_timing = false;
  BenchmarkOptions tuned = fixed;
  tuned.sigma_grid = {15, 20, 25, 30, 35};

  int compared = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Image noisy = synth_awgn(images[i].clean, 25.0, 600 + i);
    const auto f = evaluate_scene(images[i].name, "", noisy, images[i].clean, fixed);
    const auto t = evaluate_scene(images[i].name, "", noisy, images[i].clean, tuned);
    for (std::size_t k = 0; k < f.size(); ++k) {
      c.expect(t[k].psnr_db >= f[k].psnr_db, images[i].name + " " + t[k].method + " below fixed sigma");
      ++compared;
    }
  }
  c.note("grid >= fixed on " + std::to_string(compared) + " image/method pairs");

  const char* root = std::getenv("NLTD_DATASET1");
  if (root == nullptr || !fs::is_directory(root)) {
    c.note("published-average comparison not run: set NLTD_DATASET1 to the cropped dataset");
    const bool ok = c.failures.empty();
    if (!ok) ++g_failed;
    report(6, "published averages (SKIPPED, no dataset) + sigma-grid protocol", ok ? "PASS-PARTIAL" : "FAIL", c);
    return;
  }

  const DatasetScan scan = scan_dataset(root);
  BenchmarkOptions real = fixed;
  real.config.sigma = 25.0;
  const BenchmarkRun run = run_benchmark(scan.pairs, real);
  c.expect(scan.pairs.size() == 15, "dataset has " + std::to_string(scan.pairs.size()) + " pairs, expected 15");
  c.expect(run.failures.empty(), std::to_string(run.failures.size()) + " scenes failed");
  for (const MethodAggregate& agg : run.aggregates) {
    const double target = agg.method == "mstsvd" ? 37.95 : 37.70;
    const double tol = agg.method == "mstsvd" ? 1.0 : 1.5;
    c.expect(std::abs(agg.psnr_db - target) <= tol,
             agg.method + " average " + fmt("%.2f dB", agg.psnr_db) + " vs " + fmt("%.2f", target));
    c.note(agg.method + " average " + fmt("%.2f dB", agg.psnr_db));
  }
  BenchmarkOptions real_tuned = tuned;
  const BenchmarkRun best = run_benchmark(scan.pairs, real_tuned);
  for (std::size_t i = 0; i < best.rows.size() && i < run.rows.size(); ++i) {
    c.expect(best.rows[i].psnr_db >= run.rows[i].psnr_db, best.rows[i].scene + " " + best.rows[i].method + " grid below fixed");
  }
  finish(6, "published averages on Dataset 1 + sigma-grid protocol", c);
}

// 7. Resize strategy on a 1024 x 1024 image.
void criterion7(const std::vector<TestImage>& images) {
  Check c;
  const Image big_clean = resize_bicubic(images[0].clean, 1024, 1024);
  const Image noisy = synth_awgn(big_clean, 50.0, 77);
  const DenoiseConfig cfg = method_config(Method::mstsvd, 50.0);

  auto t0 = Clock::now();
  const Image full = denoise(noisy, cfg);
  const double full_s = seconds_since(t0);
  t0 = Clock::now();
  const Image half = denoise_resized(noisy, 0.5, cfg);
  const double half_s = seconds_since(t0);

  const double base = psnr(noisy, big_clean);
  const double half_db = psnr(half, big_clean);
  const double speedup = full_s / half_s;
  c.expect(speedup >= 3.0, "speedup " + fmt("%.2fx", speedup));
  c.expect(half_s < full_s * (0.25 + 0.25), "resized time above full * (scale^2 + 0.25)");
  c.expect(half_db > base, "resized output " + fmt("%.2f dB", half_db) + " not above noisy " + fmt("%.2f", base));
  c.note("full " + fmt("%.1f s", full_s) + " (" + fmt("%.2f dB", psnr(full, big_clean)) + ")");
  c.note("scale 0.5 " + fmt("%.1f s", half_s) + " (" + fmt("%.2f dB", half_db) + ")");
  c.note("noisy " + fmt("%.2f dB", base));
  c.note("speedup " + fmt("%.2fx", speedup));
  finish(7, "resize strategy at scale 0.5 on 1024x1024, sigma 50", c);
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8. Two bench runs give byte-identical CSV reports.
void criterion8(const std::string& cli, const std::vector<TestImage>& images) {
  Check c;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("nltd_accept_" + std::to_string(rd()));
  fs::create_directories(dir);
  for (const auto& im : images) {
    Image crop(128, 128);
    for (std::size_t ch = 0; ch < 3; ++ch)
      for (std::size_t q = 0; q < 128; ++q)
        for (std::size_t r = 0; r < 128; ++r) crop.at(r, q, ch) = im.clean.at(64 + r, 64 + q, ch);
    fs::create_directories(dir / "data" / im.name);
    write_png(dir / "data" / im.name / "mean.png", crop);
  }
  std::array<std::string, 2> reports;
  for (int run = 0; run < 2; ++run) {
    for (std::size_t i = 0; i < images.size(); ++i) {
      const fs::path scene = dir / "data" / images[i].name;
      const int rc = run_command(cli + " synth --sigma 25 --seed " + std::to_string(40 + i) + " " +
                                 (scene / "mean.png").string() + " " + (scene / "noisy.png").string());
      c.expect(rc == 0, "synth exit code " + std::to_string(rc));
    }
    const fs::path csv = dir / ("run" + std::to_string(run) + ".csv");
    const int rc = run_command(cli + " bench --dataset " + (dir / "data").string() +
                               " --methods mstsvd,hosvd4d,cdct --threads 2 --no-timing --report " +
                               csv.string() + " > /dev/null");
    c.expect(rc == 0, "bench exit code " + std::to_string(rc));
    reports[static_cast<std::size_t>(run)] = slurp(csv);
  }
  c.expect(!reports[0].empty(), "empty report");
  c.expect(reports[0] == reports[1], "reports differ");
  std::size_t lines = 0;
  for (char ch : reports[0]) lines += ch == '\n';
  c.note(std::to_string(reports[0].size()) + " bytes, " + std::to_string(lines) + " lines, identical");
  std::error_code ec;
  fs::remove_all(dir, ec);
  finish(8, "bench determinism (byte-identical CSV)", c);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <nltd-cli> <test-data-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<TestImage> images = load_images(argv[2]);

  const std::vector<std::function<void()>> suite{
      [&] { criterion1(images); }, [] { criterion2(); },       [] { criterion3(); },
      [&] { criterion4(images); }, [] { criterion5(); },       [&] { criterion6(images); },
      [&] { criterion7(images); }, [&] { criterion8(cli, images); }};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    try {
      suite[i]();
    } catch (const std::exception& e) {
      ++g_failed;
      std::printf("criterion %zu [FAIL] threw: %s\n", i + 1, e.what());
    }
  }
  std::printf("%s: %d criterion(s) failed\n", g_failed == 0 ? "ACCEPTED" : "REJECTED", g_failed);
  return g_failed == 0 ? 0 : 1;
}
