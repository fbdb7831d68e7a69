#include "gmorph/grid.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace gmorph {

namespace {

constexpr std::int64_t kMaxPixels = std::int64_t{1} << 28;

}  // namespace

GridGraph::GridGraph(std::int32_t width, std::int32_t height, Connectivity connectivity)
    : width_(width), height_(height), conn_(connectivity) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  if (static_cast<std::int64_t>(width) * height > kMaxPixels) {
    throw std::invalid_argument("grid is too large");
  }
  const std::int64_t w = width, h = height;
  const std::int64_t n_h = h * (w - 1);
  const std::int64_t n_v = (h - 1) * w;
  const std::int64_t n_diag = conn_ == Connectivity::Eight ? (h - 1) * (w - 1) : 0;
  v_base_ = static_cast<std::int32_t>(n_h);
  d_base_ = static_cast<std::int32_t>(n_h + n_v);
  a_base_ = static_cast<std::int32_t>(n_h + n_v + n_diag);
  edge_count_ = static_cast<std::int32_t>(n_h + n_v + 2 * n_diag);
}

GridGraph build_grid(std::int32_t width, std::int32_t height, Connectivity connectivity) {
  return GridGraph(width, height, connectivity);
}

bool GridGraph::adjacent(PixelCoord a, PixelCoord b) const {
  return try_edge_index(a, b) >= 0;
}

std::int32_t GridGraph::try_edge_index(PixelCoord a, PixelCoord b) const {
  if (!contains(a) || !contains(b)) return -1;
  if (b < a) std::swap(a, b);  // canonical order
  const std::int32_t dr = b.row - a.row;
  const std::int32_t dc = b.col - a.col;
  if (dr == 0 && dc == 1) {
    return a.row * (width_ - 1) + a.col;
  }
  if (dr == 1 && dc == 0) {
    return v_base_ + a.row * width_ + a.col;
  }
  if (conn_ == Connectivity::Eight && dr == 1 && dc == 1) {
    return d_base_ + a.row * (width_ - 1) + a.col;
  }
  if (conn_ == Connectivity::Eight && dr == 1 && dc == -1) {
    return a_base_ + a.row * (width_ - 1) + (a.col - 1);
  }
  return -1;
}

std::int32_t GridGraph::edge_index(PixelCoord a, PixelCoord b) const {
  const std::int32_t idx = try_edge_index(a, b);
  if (idx < 0) {
    throw std::invalid_argument("pixel pair is not a grid edge");
  }
  return idx;
}

GridEdge GridGraph::edge_at(std::int32_t index) const {
  if (index < 0 || index >= edge_count_) {
    throw std::invalid_argument("edge index out of range");
  }
  if (index < v_base_) {
    const std::int32_t r = index / (width_ - 1);
    const std::int32_t c = index % (width_ - 1);
    return {{r, c}, {r, c + 1}};
  }
  if (index < d_base_) {
    const std::int32_t rel = index - v_base_;
    const std::int32_t r = rel / width_;
    const std::int32_t c = rel % width_;
    return {{r, c}, {r + 1, c}};
  }
  if (index < a_base_) {
    const std::int32_t rel = index - d_base_;
    const std::int32_t r = rel / (width_ - 1);
    const std::int32_t c = rel % (width_ - 1);
    return {{r, c}, {r + 1, c + 1}};
  }
  const std::int32_t rel = index - a_base_;
  const std::int32_t r = rel / (width_ - 1);
  const std::int32_t c = rel % (width_ - 1) + 1;
  return {{r, c}, {r + 1, c - 1}};
}

EdgeOrient GridGraph::orient_at(std::int32_t index) const {
  if (index < v_base_) return EdgeOrient::H;
  if (index < d_base_) return EdgeOrient::V;
  if (index < a_base_) return EdgeOrient::D;
  return EdgeOrient::A;
}

std::int32_t GridGraph::oriented_edge_index(EdgeOrient o, PixelCoord p) const {
  switch (o) {
    case EdgeOrient::H:
      if (p.row < 0 || p.row >= height_ || p.col < 0 || p.col >= width_ - 1) return -1;
      return p.row * (width_ - 1) + p.col;
    case EdgeOrient::V:
      if (p.row < 0 || p.row >= height_ - 1 || p.col < 0 || p.col >= width_) return -1;
      return v_base_ + p.row * width_ + p.col;
    case EdgeOrient::D:
      if (conn_ != Connectivity::Eight) return -1;
      if (p.row < 0 || p.row >= height_ - 1 || p.col < 0 || p.col >= width_ - 1) return -1;
      return d_base_ + p.row * (width_ - 1) + p.col;
    case EdgeOrient::A:
      if (conn_ != Connectivity::Eight) return -1;
      if (p.row < 0 || p.row >= height_ - 1 || p.col < 1 || p.col >= width_) return -1;
      return a_base_ + p.row * (width_ - 1) + (p.col - 1);
  }
  return -1;
}

void GridGraph::incident_edges(PixelCoord p, std::vector<std::int32_t>& out) const {
  static constexpr std::int32_t kOff4[4][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  static constexpr std::int32_t kOff8[4][2] = {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (const auto& d : kOff4) {
    const std::int32_t idx = try_edge_index(p, {p.row + d[0], p.col + d[1]});
    if (idx >= 0) out.push_back(idx);
  }
  if (conn_ == Connectivity::Eight) {
    for (const auto& d : kOff8) {
      const std::int32_t idx = try_edge_index(p, {p.row + d[0], p.col + d[1]});
      if (idx >= 0) out.push_back(idx);
    }
  }
}

EdgeSet::EdgeSet(const GridGraph& grid)
    : grid_(grid), bits_((static_cast<std::size_t>(grid.edge_count()) + 63) / 64, 0) {}

EdgeSet EdgeSet::full(const GridGraph& grid) {
  EdgeSet s(grid);
  for (std::int32_t i = 0; i < grid.edge_count(); ++i) s.set(i);
  return s;
}

bool EdgeSet::empty() const {
  for (std::uint64_t w : bits_) {
    if (w != 0) return false;
  }
  return true;
}

std::int32_t EdgeSet::count() const {
  std::int64_t n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return static_cast<std::int32_t>(n);
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  check_same_grid(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if ((bits_[i] & ~other.bits_[i]) != 0) return false;
  }
  return true;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

EdgeSet& EdgeSet::operator&=(const EdgeSet& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

EdgeSet& EdgeSet::operator-=(const EdgeSet& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~other.bits_[i];
  return *this;
}

std::size_t EdgeSet::hash() const {
  // FNV-1a over the words; used for iterate-until-repeat detection together
  // with exact equality checks.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : bits_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void EdgeSet::check_same_grid(const EdgeSet& other) const {
  if (!(grid_ == other.grid_)) {
    throw std::invalid_argument("edge sets live on different grids");
  }
}

EdgeSet image_to_edgeset(const BinaryImage& img, const GridGraph& grid) {
  if (img.width != grid.width() || img.height != grid.height()) {
    throw std::invalid_argument("image dimensions do not match the grid");
  }
  EdgeSet out(grid);
  for (std::int32_t idx = 0; idx < grid.edge_count(); ++idx) {
    const GridEdge e = grid.edge_at(idx);
    if (img.at(e.u.row, e.u.col) && img.at(e.v.row, e.v.col)) out.set(idx);
  }
  return out;
}

BinaryImage edgeset_to_image(const EdgeSet& es) {
  const GridGraph& g = es.grid();
  BinaryImage img(g.width(), g.height());
  es.for_each([&](std::int32_t idx) {
    const GridEdge e = g.edge_at(idx);
    img.put(e.u.row, e.u.col, true);
    img.put(e.v.row, e.v.col, true);
  });
  return img;
}

}  // namespace gmorph
