#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nltd {

enum class Method { mstsvd, hosvd4d, cdct };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
// Throws ConfigError for unknown names.
[[nodiscard]] Method parse_method(std::string_view name);

enum class AggregationWeighting {
  uniform,           // every filtered patch counts 1
  inverse_retained,  // 1 / (1 + retained coefficients of its group)
};

struct DenoiseConfig {
  std::size_t patch_size = 8;
  std::size_t search_window = 39;
  std::size_t group_size = 32;
  std::size_t step = 4;
  double sigma = 25.0;   // noise std on the 0..255 scale
  double lambda = 1.0;   // threshold multiplier
  Method method = Method::mstsvd;
  std::optional<double> resize;  // 0 < f < 1 selects the downscale-denoise-upscale path
  AggregationWeighting weighting = AggregationWeighting::uniform;
  std::size_t threads = 0;  // 0: use the hardware concurrency

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

}  // namespace nltd

#include <vector>

namespace nltd {

// Comma-separated numbers. A literal "..." continues the arithmetic
// progression set by the first two entries up to the entry that follows it:
// "5,10,...,25" -> 5 10 15 20 25. Throws ConfigError on malformed input.
[[nodiscard]] std::vector<double> parse_number_list(std::string_view text);

}  // namespace nltd
