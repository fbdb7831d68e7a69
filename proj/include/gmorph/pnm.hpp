#pragma once

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "gmorph/grid.hpp"

namespace gmorph {

/// 8-bit grayscale raster as stored in a PGM file. Sample values are kept
/// as read; maxval is informational (at most 255 supported).
struct GrayImage {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::int32_t maxval = 255;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::int32_t row, std::int32_t col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Reads P1/P4 (PBM, 1 = black = foreground) or P2/P5 (PGM). Header comments
/// and arbitrary whitespace are accepted. Malformed input raises ParseError.
std::variant<BinaryImage, GrayImage> read_pnm(std::istream& in);

/// Foreground iff the sample is >= threshold.
BinaryImage binarize(const GrayImage& img, int threshold);

/// Canonical writers (binary P4/P5, minimal headers); reading the output
/// back yields the identical raster and re-writing yields identical bytes.
void write_pbm(std::ostream& out, const BinaryImage& img);
void write_pgm(std::ostream& out, const GrayImage& img);

}  // namespace gmorph
