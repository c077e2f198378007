#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "vpsal/grid.hpp"

namespace vpsal {

// Three equal-size channel planes in [0, 1].
struct RgbImage {
  Grid2D r;
  Grid2D g;
  Grid2D b;

  std::size_t width() const { return r.width(); }
  std::size_t height() const { return r.height(); }
};

// Reads an 8-bit PNG or JPEG (format sniffed from the file header).
RgbImage load_rgb(const std::filesystem::path& path);

// Luminance 0.299 R + 0.587 G + 0.114 B scaled to [0, 1].
Grid2D load_grayscale(const std::filesystem::path& path);
Grid2D luminance(const RgbImage& img);

// True when the file starts with a PNG or JPEG signature.
bool is_image_file(const std::filesystem::path& path);

// Whitespace-separated matrix, one row per non-empty line.
Grid2D load_text_matrix(const std::filesystem::path& path);

// Encodes values clamped to [0, 1] as 8-bit gray (v * 255, rounded).
std::string encode_png_gray(const Grid2D& g);
std::string encode_png_rgb(const RgbImage& img);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

void write_png_gray(const std::filesystem::path& path, const Grid2D& g);
void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);

}  // namespace vpsal
