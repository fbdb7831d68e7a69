#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gmorph/grid.hpp"
#include "gmorph/sgraph.hpp"

namespace gmorph {

/// One injective adjacency-preserving map of a structuring graph into a grid.
struct Embedding {
  /// vertex_map[i] = image pixel of structuring-graph vertex i.
  std::vector<PixelCoord> vertex_map;
  /// edge_map[j] = canonical grid index of the image of structuring-graph
  /// edge j (same order as StructuringGraph::edges()).
  std::vector<std::int32_t> edge_map;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// All injective homomorphisms of S into G that map the edge with index
/// root_edge onto the grid edge anchor. Both orientations of the root onto
/// the anchor are explored; the result is sorted lexicographically by
/// vertex_map. root_edge must designate a root edge of S.
std::vector<Embedding> embeddings_at(const StructuringGraph& s, const GridGraph& g,
                                     int root_edge, std::int32_t anchor);

/// Like embeddings_at but anchored on an arbitrary edge of S (no root role
/// required). Used by the structural opening, which anchors on buds.
std::vector<Embedding> embeddings_anchored(const StructuringGraph& s, const GridGraph& g,
                                           int seed_edge, std::int32_t anchor);

/// Edge neighborhood: the union of bud images over every root edge r and
/// every embedding mapping r onto the anchor. Empty when no embedding exists.
EdgeSet neighborhood(const StructuringGraph& s, const GridGraph& g, std::int32_t anchor);

/// Precomputed neighborhood evaluator for one (S, G) pair.
///
/// For a connected S the neighborhoods are translation equivariant, so one
/// template per anchor orientation describes every interior anchor: a list of
/// bud-image offsets plus the bounding box swept by all embeddings. Anchors
/// whose swept box leaves the grid fall back to a per-embedding fit check
/// (an embedding exists on the finite grid iff its own bounding box fits),
/// which is exact, not a clipped approximation. Disconnected graphs use
/// direct enumeration.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class NeighborhoodIndex {
 public:
  NeighborhoodIndex(const StructuringGraph& s, const GridGraph& g);

  const StructuringGraph& sgraph() const { return sgraph_; }
  const GridGraph& grid() const { return grid_; }

  bool neighborhood_empty(std::int32_t anchor) const;
  bool neighborhood_subset_of(std::int32_t anchor, const EdgeSet& p) const;
  void add_neighborhood(std::int32_t anchor, EdgeSet& out) const;
  EdgeSet neighborhood(std::int32_t anchor) const;

  /// Edges whose neighborhood is empty (none on most grids; all of them when
  /// S cannot embed at all, e.g. a triangle on a Four grid).
  const std::vector<std::int32_t>& empty_neighborhood_edges() const {
    return empty_edges_;
  }

  /// Calls fn(anchor) for a superset of the anchors with nonempty
  /// neighborhood contained in p. Lets erosion skip the vast majority of
  /// edges: a nonempty neighborhood inside p forces one designated probe
  /// offset to be a member of p.
  template <typename Fn>
  void for_each_erosion_candidate(const EdgeSet& p, Fn&& fn) const {
    if (slow_path_) {
      for (std::int32_t e = 0; e < grid_.edge_count(); ++e) fn(e);
      return;
    }
    for (std::int32_t e : border_edges_) fn(e);
    for (int o = 0; o < 4; ++o) {
      const OrientTemplate& t = templates_[static_cast<std::size_t>(o)];
      if (!t.anchors_exist || t.offsets.empty()) continue;
      const EdgeOffset probe = t.offsets.front();
      p.for_each([&](std::int32_t member) {
        if (grid_.orient_at(member) != probe.orient) return;
        const GridEdge me = grid_.edge_at(member);
        const PixelCoord base{me.u.row - probe.dr, me.u.col - probe.dc};
        const std::int32_t anchor =
            grid_.oriented_edge_index(static_cast<EdgeOrient>(o), base);
        if (anchor >= 0 && interior(anchor)) fn(anchor);
      });
    }
  }

 private:
  /// Grid edge relative to an anchor: orientation plus the displacement of
  /// its canonical endpoint from the anchor's canonical endpoint.
  struct EdgeOffset {
    EdgeOrient orient;
    std::int8_t dr = 0;
    std::int8_t dc = 0;

    friend auto operator<=>(const EdgeOffset&, const EdgeOffset&) = default;
  };

  /// Row/col extent swept by embedding vertices, relative to the anchor's
  /// canonical endpoint. "Fits" when the whole box lies inside the grid.
  struct Box {
    std::int8_t min_dr = 0, max_dr = 0, min_dc = 0, max_dc = 0;

    friend auto operator<=>(const Box&, const Box&) = default;
    bool covers(const Box& other) const {
      return min_dr <= other.min_dr && max_dr >= other.max_dr &&
             min_dc <= other.min_dc && max_dc >= other.max_dc;
    }
  };

  struct OffsetEntry {
    EdgeOffset offset;
    std::vector<Box> boxes;  // minimal boxes of embeddings contributing it
  };

  struct OrientTemplate {
    bool anchors_exist = false;       // grid has anchors of this orientation
    std::vector<EdgeOffset> offsets;  // full union at interior anchors
    std::vector<OffsetEntry> entries; // per-offset fit data for border anchors
    Box hull;                         // union box of every embedding
  };

  bool interior(std::int32_t anchor) const;
  bool box_fits(const Box& b, PixelCoord base) const;
  template <typename Fn>
  void visit(std::int32_t anchor, Fn&& fn) const;  // fn(edge index), may repeat

  StructuringGraph sgraph_;
  GridGraph grid_;
  bool slow_path_ = false;
  std::array<OrientTemplate, 4> templates_;
  std::vector<std::int32_t> border_edges_;  // anchors needing the fit check
  std::vector<std::int32_t> empty_edges_;
};

}  // namespace gmorph
