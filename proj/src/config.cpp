#include "nltd/config.hpp"

#include <cmath>

#include "nltd/errors.hpp"

namespace nltd {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::mstsvd: return "mstsvd";
    case Method::hosvd4d: return "hosvd4d";
    case Method::cdct: return "cdct";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "mstsvd") return Method::mstsvd;
  if (name == "hosvd4d") return Method::hosvd4d;
  if (name == "cdct") return Method::cdct;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

void DenoiseConfig::validate() const {
  if (patch_size < 2) throw ConfigError("patch size must be at least 2");
  if (search_window < patch_size) throw ConfigError("search window must be at least the patch size");
  if (group_size < 1) throw ConfigError("group size must be at least 1");
  if (step < 1) throw ConfigError("reference step must be at least 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be finite and >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be > 0");
  if (resize && !(*resize > 0.0 && *resize < 1.0)) {
    throw ConfigError("resize factor must lie strictly between 0 and 1");
  }
}

}  // namespace nltd

namespace nltd {

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  tokens.push_back(cur);

  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("malformed number '" + s + "'");
    return v;
  };

  std::vector<double> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "...") {
      out.push_back(number(tokens[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 >= tokens.size() || tokens[i + 1] == "...") {
      throw ConfigError("'...' needs two leading entries and one trailing entry");
    }
    const double step = out[1] - out[0];
    const double stop = number(tokens[i + 1]);
    if (!(step > 0.0) || stop < out.back()) throw ConfigError("'...' needs an increasing progression");
    for (double v = out.back() + step; v < stop - 1e-9 * step; v = out.back() + step) out.push_back(v);
  }
  return out;
}

}  // namespace nltd
