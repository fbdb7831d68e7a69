#pragma once

#include <cstdint>
#include <vector>

#include "gmorph/grid.hpp"

namespace gmorph {

/// Set of pixels of a fixed-size raster. Pixels outside the raster count as
/// background for every operation.
class PixelSet {
 public:
  PixelSet(std::int32_t width, std::int32_t height);
  static PixelSet from_image(const BinaryImage& img);

  std::int32_t width() const { return width_; }
  std::int32_t height() const { return height_; }

  bool contains(std::int32_t row, std::int32_t col) const {
    if (row < 0 || row >= height_ || col < 0 || col >= width_) return false;
    return bits_[index(row, col)] != 0;
  }
  void add(std::int32_t row, std::int32_t col) { bits_[index(row, col)] = 1; }
  void remove(std::int32_t row, std::int32_t col) { bits_[index(row, col)] = 0; }

  bool empty() const;
  std::int64_t count() const;
  BinaryImage to_image() const;

  friend bool operator==(const PixelSet&, const PixelSet&) = default;

 private:
  std::size_t index(std::int32_t row, std::int32_t col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  std::int32_t width_;
  std::int32_t height_;
  std::vector<std::uint8_t> bits_;
};

/// Flat structuring elements, origin at the center.
enum class FlatSE {
  Cross3,  // center plus the four axis neighbors
  Box3,    // full 3x3 square
};

PixelSet erode_px(const PixelSet& m, FlatSE b);
PixelSet dilate_px(const PixelSet& m, FlatSE b);
PixelSet open_px(const PixelSet& m, FlatSE b);

/// Opening by the n-fold dilation of b with itself (n = 0 gives the
/// identity); erode n times then dilate n times.
PixelSet open_px_scaled(const PixelSet& m, FlatSE b, std::int32_t n);

/// Classical morphological skeleton: layer n holds
/// (M erode nB) minus the opening of (M erode nB) by B, for every n with
/// M erode nB nonempty. This erosion is anti-extensive, so the layer list is
/// always finite.
struct ClassicalSkeleton {
  FlatSE se = FlatSE::Box3;
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<PixelSet> layers;  // skel_0 .. skel_N

  /// Largest stored scale; -1 for the empty input.
  std::int32_t max_scale() const { return static_cast<std::int32_t>(layers.size()) - 1; }
};

ClassicalSkeleton skel_px(const PixelSet& m, FlatSE b);

/// Union of skel_n dilated by nB for k <= n <= N. k = 0 rebuilds the input
/// exactly; k >= 1 rebuilds the input opened by kB. k outside the stored
/// range raises std::invalid_argument (k = 0 is always allowed).
PixelSet recon_px(const ClassicalSkeleton& sk, std::int32_t k);

}  // namespace gmorph
