#include "vpsal/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

// jpeglib.h needs FILE and size_t declared first
#include <jpeglib.h>

#include "vpsal/errors.hpp"

namespace vpsal {
namespace {

enum class Format { png, jpeg, unknown };

Format sniff(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), sizeof sig);
  const auto got = in.gcount();
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (got == 8 && std::memcmp(sig, kPng, 8) == 0) return Format::png;
  if (got >= 3 && sig[0] == 0xff && sig[1] == 0xd8 && sig[2] == 0xff) return Format::jpeg;
  return Format::unknown;
}

RgbImage from_interleaved(std::size_t w, std::size_t h, const std::vector<unsigned char>& px) {
  RgbImage img{Grid2D(w, h), Grid2D(w, h), Grid2D(w, h)};
  auto r = img.r.values();
  auto g = img.g.values();
  auto b = img.b.values();
  for (std::size_t i = 0; i < w * h; ++i) {
    r[i] = px[3 * i] / 255.0;
    g[i] = px[3 * i + 1] / 255.0;
    b[i] = px[3 * i + 2] / 255.0;
  }
  return img;
}

RgbImage read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw IoError("zero-dimension image " + path.string());
  }
  std::vector<unsigned char> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + path.string() + ": " + msg);
  }
  return from_interleaved(image.width, image.height, px);
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RgbImage read_jpeg(const std::filesystem::path& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) throw IoError("cannot open " + path.string());

  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  std::vector<unsigned char> px;
  std::size_t w = 0, h = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("cannot decode JPEG " + path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  w = cinfo.output_width;
  h = cinfo.output_height;
  px.resize(w * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = px.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  if (w == 0 || h == 0) throw IoError("zero-dimension image " + path.string());
  return from_interleaved(w, h, px);
}

unsigned char to_byte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::string encode_png(const std::vector<unsigned char>& px, std::size_t w, std::size_t h,
                       png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, px.data(), 0, nullptr)) {
    throw IoError(std::string("PNG encoding failed: ") + image.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, px.data(), 0, nullptr)) {
    throw IoError(std::string("PNG encoding failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace

RgbImage load_rgb(const std::filesystem::path& path) {
  switch (sniff(path)) {
    case Format::png:
      return read_png(path);
    case Format::jpeg:
      return read_jpeg(path);
    case Format::unknown:
      break;
  }
  throw IoError("unsupported image format: " + path.string());
}

Grid2D luminance(const RgbImage& img) {
  Grid2D out(img.width(), img.height());
  auto r = img.r.values();
  auto g = img.g.values();
  auto b = img.b.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::clamp(0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i], 0.0, 1.0);
  }
  return out;
}

Grid2D load_grayscale(const std::filesystem::path& path) { return luminance(load_rgb(path)); }

bool is_image_file(const std::filesystem::path& path) { return sniff(path) != Format::unknown; }

Grid2D load_text_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::size_t width = 0, height = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw IoError("non-numeric token '" + tok + "' in " + path.string());
      }
    }
    if (row.empty()) continue;
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw IoError("ragged matrix in " + path.string() + " at row " + std::to_string(height + 1));
    }
    values.insert(values.end(), row.begin(), row.end());
    ++height;
  }
  if (height == 0) throw IoError("empty matrix in " + path.string());
  try {
    return Grid2D(width, height, std::move(values));
  } catch (const InvalidArgument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string encode_png_gray(const Grid2D& g) {
  std::vector<unsigned char> px(g.size());
  std::transform(g.values().begin(), g.values().end(), px.begin(), to_byte);
  return encode_png(px, g.width(), g.height(), PNG_FORMAT_GRAY);
}

std::string encode_png_rgb(const RgbImage& img) {
  const std::size_t n = img.r.size();
  std::vector<unsigned char> px(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    px[3 * i] = to_byte(img.r.values()[i]);
    px[3 * i + 1] = to_byte(img.g.values()[i]);
    px[3 * i + 2] = to_byte(img.b.values()[i]);
  }
  return encode_png(px, img.width(), img.height(), PNG_FORMAT_RGB);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

void write_png_gray(const std::filesystem::path& path, const Grid2D& g) {
  write_file_atomic(path, encode_png_gray(g));
}

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img) {
  write_file_atomic(path, encode_png_rgb(img));
}

}  // namespace vpsal
