#include "nltd/png_io.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <csetjmp>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

namespace nltd {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open(const std::filesystem::path& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

// libpng reports errors by longjmp; the message is kept for the C++ exception
// raised at the matching setjmp.
struct ErrorSlot {
  std::string message = "libpng error";
};

[[noreturn]] void on_png_error(png_structp png, png_const_charp msg) {
  if (auto* slot = static_cast<ErrorSlot*>(png_get_error_ptr(png))) slot->message = msg;
  png_longjmp(png, 1);
}
void on_png_warning(png_structp, png_const_charp) {}

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ReadHandles() = default;
  ReadHandles(const ReadHandles&) = delete;
  ReadHandles& operator=(const ReadHandles&) = delete;
  ~ReadHandles() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : file_(open(path, "rb")), path_(path) {
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, file_.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
      throw IoError("'" + path.string() + "' is not a PNG file");
    }
    h_.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_, on_png_error, on_png_warning);
    if (!h_.png) throw IoError("libpng initialization failed");
    png_ = h_.png;
    h_.info = png_create_info_struct(png_);
    info_ = h_.info;
    if (!info_) throw IoError("libpng initialization failed");
    if (setjmp(png_jmpbuf(png_))) throw IoError(failure());
    png_init_io(png_, file_.get());
    png_set_sig_bytes(png_, 8);
    png_read_info(png_, info_);
  }

  std::string failure() const { return "'" + path_.string() + "': " + error_.message; }

  ImageExtents extents() const {
    return {png_get_image_height(png_, info_), png_get_image_width(png_, info_)};
  }

  Image decode() {
    const auto [h, w] = extents();
    std::vector<unsigned char> buf;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png_))) throw IoError(failure());
    const int color = png_get_color_type(png_, info_);
    if (png_get_bit_depth(png_, info_) == 16) png_set_strip_16(png_);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png_);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_expand_gray_1_2_4_to_8(png_);
      png_set_gray_to_rgb(png_);
    }
    if (png_get_valid(png_, info_, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png_);
    png_set_strip_alpha(png_);
    png_read_update_info(png_, info_);
    if (png_get_channels(png_, info_) != 3) throw IoError("unsupported PNG layout");

    const std::size_t stride = png_get_rowbytes(png_, info_);
    buf.resize(stride * h);
    rows.resize(h);
    for (std::size_t r = 0; r < h; ++r) rows[r] = buf.data() + r * stride;
    png_read_image(png_, rows.data());

    Image img(h, w);
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        for (std::size_t ch = 0; ch < 3; ++ch) img.at(r, c, ch) = rows[r][3 * c + ch];
      }
    }
    return img;
  }

 private:
  File file_;
  std::filesystem::path path_;
  ErrorSlot error_;
  ReadHandles h_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

}  // namespace

Image read_png(const std::filesystem::path& path) {
  Reader reader(path);
  return reader.decode();
}

ImageExtents read_png_extents(const std::filesystem::path& path) {
  return Reader(path).extents();
}

void write_png(const std::filesystem::path& path, const Image& image) {
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  std::vector<unsigned char> buf(h * w * 3);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const double v = std::clamp(std::floor(image.at(r, c, ch) + 0.5), 0.0, 255.0);
        buf[3 * (r * w + c) + ch] = static_cast<unsigned char>(v);
      }
    }
  }

  std::vector<png_bytep> rows(h);
  for (std::size_t r = 0; r < h; ++r) rows[r] = buf.data() + r * w * 3;

  File file = open(path, "wb");
  ErrorSlot error;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
  if (!png) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("'" + path.string() + "': " + error.message);
  }
  {
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
  }
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace nltd
