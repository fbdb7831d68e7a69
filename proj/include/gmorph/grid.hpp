#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace gmorph {

enum class Connectivity { Four, Eight };

struct PixelCoord {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

/// Undirected grid edge in canonical form: u precedes v lexicographically
/// by (row, col).
struct GridEdge {
  PixelCoord u;
  PixelCoord v;

  friend auto operator<=>(const GridEdge&, const GridEdge&) = default;
};

/// Orientation classes of grid edges. Four-connected grids only have H and V.
enum class EdgeOrient : std::uint8_t {
  H = 0,  // (r,c)-(r,c+1)
  V = 1,  // (r,c)-(r+1,c)
  D = 2,  // (r,c)-(r+1,c+1)
  A = 3,  // (r,c)-(r+1,c-1), canonical endpoint is the upper-right pixel
};

/// Regular pixel-adjacency graph of a width x height raster. Vertices are all
/// pixels; edges join pixels at Manhattan distance 1 (Four) or Chebyshev
/// distance 1 (Eight). Every edge has one canonical index; indices are laid
/// out in orientation blocks H, V, D, A so that index arithmetic is
/// closed-form in both directions.
///
/// Immutable value type, cheap to copy.
class GridGraph {
 public:
  GridGraph(std::int32_t width, std::int32_t height, Connectivity connectivity);

  std::int32_t width() const { return width_; }
  std::int32_t height() const { return height_; }
  Connectivity connectivity() const { return conn_; }

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(width_) * height_;
  }
  std::int32_t edge_count() const { return edge_count_; }

  bool contains(PixelCoord p) const {
    return p.row >= 0 && p.row < height_ && p.col >= 0 && p.col < width_;
  }

  /// True when {a, b} is an edge of this grid.
  bool adjacent(PixelCoord a, PixelCoord b) const;

  /// Canonical index of the edge {a, b}; -1 when it is not a grid edge.
  std::int32_t try_edge_index(PixelCoord a, PixelCoord b) const;

  /// Canonical index of the edge {a, b}; throws std::invalid_argument when
  /// it is not a grid edge.
  std::int32_t edge_index(PixelCoord a, PixelCoord b) const;

  GridEdge edge_at(std::int32_t index) const;
  EdgeOrient orient_at(std::int32_t index) const;

  /// Index of the edge with the given orientation whose canonical endpoint is
  /// p; -1 when that edge does not exist in this grid.
  std::int32_t oriented_edge_index(EdgeOrient o, PixelCoord p) const;

  /// Appends the indices of all edges incident to p (between 0 and 8 of them).
  void incident_edges(PixelCoord p, std::vector<std::int32_t>& out) const;

  friend bool operator==(const GridGraph&, const GridGraph&) = default;

 private:
  std::int32_t width_;
  std::int32_t height_;
  Connectivity conn_;
  // block offsets: H starts at 0, V at v_base_, D at d_base_, A at a_base_
  std::int32_t v_base_;
  std::int32_t d_base_;
  std::int32_t a_base_;
  std::int32_t edge_count_;
};

/// Builds a grid; zero or negative dimensions raise std::invalid_argument.
GridGraph build_grid(std::int32_t width, std::int32_t height, Connectivity connectivity);

/// Subset of the edges of one grid, stored as a bitset over canonical edge
/// indices. Set algebra is only defined between sets on the same grid.
class EdgeSet {
 public:
  explicit EdgeSet(const GridGraph& grid);
  static EdgeSet full(const GridGraph& grid);

  const GridGraph& grid() const { return grid_; }

  bool test(std::int32_t index) const {
    return (bits_[static_cast<std::size_t>(index) >> 6] >> (index & 63)) & 1u;
  }
  void set(std::int32_t index) {
    bits_[static_cast<std::size_t>(index) >> 6] |= std::uint64_t{1} << (index & 63);
  }
  void reset(std::int32_t index) {
    bits_[static_cast<std::size_t>(index) >> 6] &= ~(std::uint64_t{1} << (index & 63));
  }

  bool empty() const;
  std::int32_t count() const;
  bool is_subset_of(const EdgeSet& other) const;

  EdgeSet& operator|=(const EdgeSet& other);
  EdgeSet& operator&=(const EdgeSet& other);
  EdgeSet& operator-=(const EdgeSet& other);

  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.grid_ == b.grid_ && a.bits_ == b.bits_;
  }

  /// Calls fn(index) for every member edge in ascending index order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        int bit = std::countr_zero(word);
        fn(static_cast<std::int32_t>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  std::size_t hash() const;

 private:
  void check_same_grid(const EdgeSet& other) const;

  GridGraph grid_;
  std::vector<std::uint64_t> bits_;
};

/// Binary raster; pixels are 0 (background) or 1 (foreground), row major.
struct BinaryImage {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint8_t> pixels;

  BinaryImage() = default;
  BinaryImage(std::int32_t w, std::int32_t h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  std::uint8_t at(std::int32_t row, std::int32_t col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)];
  }
  void put(std::int32_t row, std::int32_t col, bool value) {
    pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)] =
        value ? 1 : 0;
  }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

/// Edge (u,v) belongs to the result iff both endpoint pixels are foreground.
/// Isolated foreground pixels therefore vanish; see edgeset_to_image.
/// Dimension mismatch raises std::invalid_argument.
EdgeSet image_to_edgeset(const BinaryImage& img, const GridGraph& grid);

/// A pixel is foreground iff it is incident to at least one member edge.
BinaryImage edgeset_to_image(const EdgeSet& es);

}  // namespace gmorph
