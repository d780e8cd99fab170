#include "evoxplain/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "evoxplain/error.hpp"

namespace evoxplain {
namespace {

struct ImageGuard {
  png_image* image;
  ~ImageGuard() { png_image_free(image); }
};

}  // namespace

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  ImageGuard guard{&image};

  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    fail(ErrorKind::Input, std::string("cannot decode PNG: ") + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    fail(ErrorKind::Input, std::string("cannot decode PNG: ") + image.message);
  }

  const std::size_t width = image.width;
  const std::size_t height = image.height;
  std::vector<Rgb> pixels(width * height);
  // Composite over opaque black: c' = round(c * a / 255).
  const auto over_black = [](unsigned c, unsigned a) {
    return static_cast<std::uint8_t>((c * a + 127) / 255);
  };
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const std::uint8_t* p = &rgba[4 * i];
    pixels[i] = Rgb{over_black(p[0], p[3]), over_black(p[1], p[3]), over_black(p[2], p[3])};
  }
  return RasterImage(width, height, std::move(pixels));
}

std::vector<std::uint8_t> encode_png(const RasterImage& raster) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width());
  image.height = static_cast<png_uint_32>(raster.height());
  image.format = PNG_FORMAT_RGB;
  ImageGuard guard{&image};

  static_assert(sizeof(Rgb) == 3, "Rgb must be tightly packed");
  const void* buffer = raster.pixels().data();

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, buffer, 0, nullptr)) {
    fail(ErrorKind::Input, std::string("cannot encode PNG: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, buffer, 0, nullptr)) {
    fail(ErrorKind::Input, std::string("cannot encode PNG: ") + image.message);
  }
  out.resize(size);
  return out;
}

RasterImage read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

void write_png(const std::filesystem::path& path, const RasterImage& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Input, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Input, "failed writing " + path.string());
}

}  // namespace evoxplain
