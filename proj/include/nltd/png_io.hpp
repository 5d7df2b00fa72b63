#pragma once

#include <cstddef>
#include <filesystem>

#include "nltd/image.hpp"

namespace nltd {

struct ImageExtents {
  std::size_t height = 0;
  std::size_t width = 0;
};

// Decodes any PNG to 8-bit RGB (gray is replicated, alpha dropped, 16-bit
// reduced). Throws IoError on failure.
[[nodiscard]] Image read_png(const std::filesystem::path& path);

// Reads only the header.
[[nodiscard]] ImageExtents read_png_extents(const std::filesystem::path& path);

// Writes 8-bit RGB; samples are rounded half up and clamped to [0, 255].
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace nltd
