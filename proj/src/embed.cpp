#include "gmorph/embed.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gmorph {

namespace {

std::vector<int> elimination_order(const StructuringGraph& s, int su, int sv) {
  std::vector<int> order{su, sv};
  std::uint16_t placed = static_cast<std::uint16_t>((1u << su) | (1u << sv));
  while (static_cast<int>(order.size()) < s.vertex_count()) {
    int pick = -1;
    for (int v = 0; v < s.vertex_count(); ++v) {
      if (placed & (1u << v)) continue;
      if (s.adjacency(v) & placed) {
        pick = v;
        break;
      }
    }
    if (pick < 0) {
      for (int v = 0; v < s.vertex_count(); ++v) {
        if (!(placed & (1u << v))) {
          pick = v;
          break;
        }
      }
    }
    order.push_back(pick);
    placed |= static_cast<std::uint16_t>(1u << pick);
  }
  return order;
}

/// Depth-first enumeration of injective homomorphisms with two fixed seed
/// vertices. Calls fn(vertex_map) for every complete embedding; allocation
/// free apart from the shared order vector.
template <typename Fn>
struct Backtracker {
  const StructuringGraph& s;
  const GridGraph& g;
  const std::vector<int>& order;
  Fn& fn;
  std::array<PixelCoord, StructuringGraph::kMaxVertices> vertex_map{};
  std::uint16_t assigned = 0;

  bool used(PixelCoord p) const {
    for (int v = 0; v < s.vertex_count(); ++v) {
      if ((assigned & (1u << v)) && vertex_map[static_cast<std::size_t>(v)] == p) return true;
    }
    return false;
  }

  void extend(std::size_t depth) {
    if (depth == order.size()) {
      fn(vertex_map);
      return;
    }
    const int v = order[depth];
    const std::uint16_t mapped_nb = s.adjacency(v) & assigned;
    if (mapped_nb == 0) {
      // Free component: place anywhere. Kept for generality; the builtins
      // are all connected and never hit this branch.
      for (std::int32_t r = 0; r < g.height(); ++r) {
        for (std::int32_t c = 0; c < g.width(); ++c) {
          try_assign(v, {r, c}, depth);
        }
      }
      return;
    }
    const int first = std::countr_zero(mapped_nb);
    const PixelCoord base = vertex_map[static_cast<std::size_t>(first)];
    for (std::int32_t dr = -1; dr <= 1; ++dr) {
      for (std::int32_t dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const PixelCoord cand{base.row + dr, base.col + dc};
        if (!g.adjacent(base, cand)) continue;
        try_assign(v, cand, depth);
      }
    }
  }

  void try_assign(int v, PixelCoord cand, std::size_t depth) {
    if (used(cand)) return;
    std::uint16_t nb = s.adjacency(v) & assigned;
    while (nb != 0) {
      const int u = std::countr_zero(nb);
      nb &= static_cast<std::uint16_t>(nb - 1);
      if (!g.adjacent(vertex_map[static_cast<std::size_t>(u)], cand)) return;
    }
    vertex_map[static_cast<std::size_t>(v)] = cand;
    assigned |= static_cast<std::uint16_t>(1u << v);
    extend(depth + 1);
    assigned &= static_cast<std::uint16_t>(~(1u << v));
  }
};

/// Runs fn(vertex_map) for every injective homomorphism mapping the seed
/// edge onto the anchor, in both orientations.
template <typename Fn>
void visit_embeddings(const StructuringGraph& s, const GridGraph& g, int seed_edge,
                      std::int32_t anchor, Fn&& fn) {
  const auto& se = s.edges()[static_cast<std::size_t>(seed_edge)];
  const GridEdge ae = g.edge_at(anchor);
  const std::vector<int> order = elimination_order(s, se.u, se.v);
  Backtracker<Fn> bt{s, g, order, fn};
  for (const auto& [x, y] : {std::pair{ae.u, ae.v}, std::pair{ae.v, ae.u}}) {
    bt.vertex_map[static_cast<std::size_t>(se.u)] = x;
    bt.vertex_map[static_cast<std::size_t>(se.v)] = y;
    bt.assigned = static_cast<std::uint16_t>((1u << se.u) | (1u << se.v));
    bt.extend(2);
  }
}

}  // namespace

std::vector<Embedding> embeddings_anchored(const StructuringGraph& s, const GridGraph& g,
                                           int seed_edge, std::int32_t anchor) {
  if (seed_edge < 0 || seed_edge >= s.edge_count()) {
    throw std::invalid_argument("seed edge index out of range");
  }
  if (anchor < 0 || anchor >= g.edge_count()) {
    throw std::invalid_argument("anchor edge index out of range");
  }
  std::vector<Embedding> result;
  visit_embeddings(s, g, seed_edge, anchor,
                   [&](const std::array<PixelCoord, StructuringGraph::kMaxVertices>& vm) {
                     Embedding e;
                     e.vertex_map.assign(vm.begin(), vm.begin() + s.vertex_count());
                     e.edge_map.reserve(s.edges().size());
                     for (const auto& se : s.edges()) {
                       e.edge_map.push_back(
                           g.edge_index(e.vertex_map[static_cast<std::size_t>(se.u)],
                                        e.vertex_map[static_cast<std::size_t>(se.v)]));
                     }
                     result.push_back(std::move(e));
                   });
  std::sort(result.begin(), result.end(), [](const Embedding& a, const Embedding& b) {
    return a.vertex_map < b.vertex_map;
  });
  return result;
}

std::vector<Embedding> embeddings_at(const StructuringGraph& s, const GridGraph& g,
                                     int root_edge, std::int32_t anchor) {
  if (root_edge < 0 || root_edge >= s.edge_count() ||
      !s.edges()[static_cast<std::size_t>(root_edge)].root) {
    throw std::invalid_argument("root_edge must designate a root edge of the structuring graph");
  }
  return embeddings_anchored(s, g, root_edge, anchor);
}

EdgeSet neighborhood(const StructuringGraph& s, const GridGraph& g, std::int32_t anchor) {
  EdgeSet out(g);
  for (int j = 0; j < s.edge_count(); ++j) {
    if (!s.edges()[static_cast<std::size_t>(j)].root) continue;
    visit_embeddings(s, g, j, anchor,
                     [&](const std::array<PixelCoord, StructuringGraph::kMaxVertices>& vm) {
                       for (const auto& se : s.edges()) {
                         if (!se.bud) continue;
                         out.set(g.edge_index(vm[static_cast<std::size_t>(se.u)],
                                              vm[static_cast<std::size_t>(se.v)]));
                       }
                     });
  }
  return out;
}

// ---------------------------------------------------------------------------
// NeighborhoodIndex
// ---------------------------------------------------------------------------

namespace {

PixelCoord anchor_base(const GridGraph& g, std::int32_t anchor) {
  return g.edge_at(anchor).u;
}

/// The four anchor shapes, second endpoint relative to the canonical one.
constexpr std::array<std::pair<std::int32_t, std::int32_t>, 4> kAnchorSecond = {{
    {0, 1},   // H
    {1, 0},   // V
    {1, 1},   // D
    {1, -1},  // A
}};

}  // namespace

NeighborhoodIndex::NeighborhoodIndex(const StructuringGraph& s, const GridGraph& g)
    : sgraph_(s), grid_(g) {
  slow_path_ = !sgraph_.connected();

  if (!slow_path_) {
    // Build one template per anchor orientation on a scratch grid large
    // enough that no embedding can reach its border.
    const std::int32_t pad = sgraph_.vertex_count() + 2;
    const std::int32_t side = 2 * pad + 2;
    const GridGraph scratch(side, side, grid_.connectivity());
    for (int o = 0; o < 4; ++o) {
      OrientTemplate& t = templates_[static_cast<std::size_t>(o)];
      const auto [sr, sc] = kAnchorSecond[static_cast<std::size_t>(o)];
      const PixelCoord a{pad, pad};
      const PixelCoord b{pad + sr, pad + sc};
      const std::int32_t anchor = scratch.try_edge_index(a, b);
      if (anchor < 0) continue;  // orientation absent (Four connectivity)
      const PixelCoord base = scratch.edge_at(anchor).u;

      // Minimal embedding boxes grouped by contributed bud offset.
      std::map<EdgeOffset, std::vector<Box>> grouped;
      for (int j = 0; j < sgraph_.edge_count(); ++j) {
        if (!sgraph_.edges()[static_cast<std::size_t>(j)].root) continue;
        visit_embeddings(
            sgraph_, scratch, j, anchor,
            [&](const std::array<PixelCoord, StructuringGraph::kMaxVertices>& vm) {
              // Every embedding covers the anchor base, so growing the box
              // and hull from {0,0,0,0} is sound.
              Box box;
              for (int v = 0; v < sgraph_.vertex_count(); ++v) {
                const PixelCoord p = vm[static_cast<std::size_t>(v)];
                const std::int8_t dr = static_cast<std::int8_t>(p.row - base.row);
                const std::int8_t dc = static_cast<std::int8_t>(p.col - base.col);
                box.min_dr = std::min(box.min_dr, dr);
                box.max_dr = std::max(box.max_dr, dr);
                box.min_dc = std::min(box.min_dc, dc);
                box.max_dc = std::max(box.max_dc, dc);
              }
              t.hull.min_dr = std::min(t.hull.min_dr, box.min_dr);
              t.hull.max_dr = std::max(t.hull.max_dr, box.max_dr);
              t.hull.min_dc = std::min(t.hull.min_dc, box.min_dc);
              t.hull.max_dc = std::max(t.hull.max_dc, box.max_dc);
              for (const auto& se : sgraph_.edges()) {
                if (!se.bud) continue;
                PixelCoord u = vm[static_cast<std::size_t>(se.u)];
                PixelCoord v = vm[static_cast<std::size_t>(se.v)];
                if (v < u) std::swap(u, v);
                const std::int32_t img = scratch.edge_index(u, v);
                const EdgeOffset off{scratch.orient_at(img),
                                     static_cast<std::int8_t>(u.row - base.row),
                                     static_cast<std::int8_t>(u.col - base.col)};
                // Keep only the minimal boxes per offset: a box that covers a
                // kept one can never fit unless the kept one fits too.
                auto& boxes = grouped[off];
                bool dominated = false;
                for (const Box& kept : boxes) {
                  if (box.covers(kept)) {
                    dominated = true;
                    break;
                  }
                }
                if (!dominated) {
                  std::erase_if(boxes, [&](const Box& kept) { return kept.covers(box); });
                  boxes.push_back(box);
                }
              }
            });
      }
      t.anchors_exist = true;
      t.offsets.reserve(grouped.size());
      for (const auto& [off, boxes] : grouped) t.offsets.push_back(off);
      // Failing probes early speeds up erosion; distant offsets are the most
      // likely to be missing from the operand.
      std::sort(t.offsets.begin(), t.offsets.end(), [](const EdgeOffset& x, const EdgeOffset& y) {
        const int mx = std::abs(x.dr) + std::abs(x.dc);
        const int my = std::abs(y.dr) + std::abs(y.dc);
        if (mx != my) return mx > my;
        return x < y;
      });
      t.entries.reserve(t.offsets.size());
      for (const EdgeOffset& off : t.offsets) {
        t.entries.push_back(OffsetEntry{off, std::move(grouped[off])});
      }
    }
  }

  // Classify anchors and record the empty ones; in the slow path this scans
  // with direct enumeration, which is only sensible on small grids.
  for (std::int32_t e = 0; e < grid_.edge_count(); ++e) {
    if (slow_path_) {
      if (gmorph::neighborhood(sgraph_, grid_, e).empty()) empty_edges_.push_back(e);
      continue;
    }
    if (!interior(e)) border_edges_.push_back(e);
    if (neighborhood_empty(e)) empty_edges_.push_back(e);
  }
}

bool NeighborhoodIndex::box_fits(const Box& b, PixelCoord base) const {
  return base.row + b.min_dr >= 0 && base.row + b.max_dr < grid_.height() &&
         base.col + b.min_dc >= 0 && base.col + b.max_dc < grid_.width();
}

bool NeighborhoodIndex::interior(std::int32_t anchor) const {
  const OrientTemplate& t =
      templates_[static_cast<std::size_t>(grid_.orient_at(anchor))];
  return box_fits(t.hull, anchor_base(grid_, anchor));
}

template <typename Fn>
void NeighborhoodIndex::visit(std::int32_t anchor, Fn&& fn) const {
  const OrientTemplate& t =
      templates_[static_cast<std::size_t>(grid_.orient_at(anchor))];
  const PixelCoord base = anchor_base(grid_, anchor);
  if (box_fits(t.hull, base)) {
    for (const EdgeOffset& off : t.offsets) {
      const std::int32_t idx =
          grid_.oriented_edge_index(off.orient, {base.row + off.dr, base.col + off.dc});
      if (!fn(idx)) return;
    }
    return;
  }
  for (const OffsetEntry& entry : t.entries) {
    bool present = false;
    for (const Box& b : entry.boxes) {
      if (box_fits(b, base)) {
        present = true;
        break;
      }
    }
    if (!present) continue;
    const std::int32_t idx = grid_.oriented_edge_index(
        entry.offset.orient, {base.row + entry.offset.dr, base.col + entry.offset.dc});
    if (!fn(idx)) return;
  }
}

bool NeighborhoodIndex::neighborhood_empty(std::int32_t anchor) const {
  if (slow_path_) {
    return gmorph::neighborhood(sgraph_, grid_, anchor).empty();
  }
  bool any = false;
  visit(anchor, [&](std::int32_t) {
    any = true;
    return false;
  });
  return !any;
}

bool NeighborhoodIndex::neighborhood_subset_of(std::int32_t anchor, const EdgeSet& p) const {
  if (slow_path_) {
    return gmorph::neighborhood(sgraph_, grid_, anchor).is_subset_of(p);
  }
  bool ok = true;
  visit(anchor, [&](std::int32_t idx) {
    if (!p.test(idx)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

void NeighborhoodIndex::add_neighborhood(std::int32_t anchor, EdgeSet& out) const {
  if (slow_path_) {
    out |= gmorph::neighborhood(sgraph_, grid_, anchor);
    return;
  }
  visit(anchor, [&](std::int32_t idx) {
    out.set(idx);
    return true;
  });
}

EdgeSet NeighborhoodIndex::neighborhood(std::int32_t anchor) const {
  EdgeSet out(grid_);
  add_neighborhood(anchor, out);
  return out;
}

}  // namespace gmorph
