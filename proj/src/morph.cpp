#include "gmorph/morph.hpp"

#include <deque>
#include <stdexcept>

namespace gmorph {

namespace {

void require_same_grid(const EdgeSet& m, const GridGraph& g) {
  if (!(m.grid() == g)) {
    throw std::invalid_argument("edge set does not live on the given grid");
  }
}

void require_roots(const StructuringGraph& s) {
  if (!s.has_roots()) {
    throw std::invalid_argument("structuring graph needs at least one root edge");
  }
}

}  // namespace

EdgeSet dilate(const EdgeSet& m, const NeighborhoodIndex& nbr) {
  require_same_grid(m, nbr.grid());
  require_roots(nbr.sgraph());
  if (!nbr.sgraph().has_buds()) {
    throw std::invalid_argument("structuring graph needs at least one bud edge");
  }
  EdgeSet out(nbr.grid());
  m.for_each([&](std::int32_t e) { nbr.add_neighborhood(e, out); });
  return out;
}

EdgeSet dilate(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g) {
  return dilate(m, NeighborhoodIndex(s, g));
}

EdgeSet erode(const EdgeSet& p, const NeighborhoodIndex& nbr, VacuousPolicy policy) {
  require_same_grid(p, nbr.grid());
  require_roots(nbr.sgraph());
  EdgeSet out(nbr.grid());
  if (policy == VacuousPolicy::Include) {
    for (std::int32_t e : nbr.empty_neighborhood_edges()) out.set(e);
  }
  nbr.for_each_erosion_candidate(p, [&](std::int32_t anchor) {
    if (out.test(anchor)) return;
    if (nbr.neighborhood_empty(anchor)) return;  // handled above per policy
    if (nbr.neighborhood_subset_of(anchor, p)) out.set(anchor);
  });
  return out;
}

EdgeSet erode(const EdgeSet& p, const StructuringGraph& s, const GridGraph& g,
              VacuousPolicy policy) {
  return erode(p, NeighborhoodIndex(s, g), policy);
}

EdgeSet open_structural(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g) {
  require_same_grid(m, g);
  if (!s.has_buds()) {
    throw std::invalid_argument("structural opening needs at least one bud edge");
  }
  // Anchor on a fixed bud edge: its image must itself be a member of m, so
  // only member anchors can contribute.
  int seed = -1;
  for (int j = 0; j < s.edge_count(); ++j) {
    if (s.edges()[static_cast<std::size_t>(j)].bud) {
      seed = j;
      break;
    }
  }
  EdgeSet out(g);
  m.for_each([&](std::int32_t anchor) {
    for (const Embedding& h : embeddings_anchored(s, g, seed, anchor)) {
      bool inside = true;
      for (int j = 0; j < s.edge_count() && inside; ++j) {
        if (s.edges()[static_cast<std::size_t>(j)].bud && !m.test(h.edge_map[static_cast<std::size_t>(j)])) {
          inside = false;
        }
      }
      if (!inside) continue;
      for (int j = 0; j < s.edge_count(); ++j) {
        if (s.edges()[static_cast<std::size_t>(j)].bud) out.set(h.edge_map[static_cast<std::size_t>(j)]);
      }
    }
  });
  return out;
}

EdgeSet open_adjoint(const EdgeSet& m, const NeighborhoodIndex& nbr, VacuousPolicy policy) {
  return dilate(erode(m, nbr, policy), nbr);
}

EdgeSet close_adjoint(const EdgeSet& m, const NeighborhoodIndex& nbr, VacuousPolicy policy) {
  return erode(dilate(m, nbr), nbr, policy);
}

EdgeSet open_adjoint(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                     VacuousPolicy policy) {
  return open_adjoint(m, NeighborhoodIndex(s, g), policy);
}

EdgeSet close_adjoint(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                      VacuousPolicy policy) {
  return close_adjoint(m, NeighborhoodIndex(s, g), policy);
}

EdgeWeightMap gray_dilate(const EdgeWeightMap& f, const StructuringGraph& s, const GridGraph& g) {
  if (!(f.grid() == g)) {
    throw std::invalid_argument("weight map does not live on the given grid");
  }
  require_roots(s);
  const NeighborhoodIndex nbr(s, g);
  EdgeWeightMap out(g, EdgeWeightMap::kBottom);
  // Scatter instead of gather: e' collects max f(e) over all e whose
  // neighborhood contains e'.
  for (std::int32_t e = 0; e < g.edge_count(); ++e) {
    const std::uint8_t w = f.at(e);
    if (w == EdgeWeightMap::kBottom) continue;
    EdgeSet n = nbr.neighborhood(e);
    n.for_each([&](std::int32_t target) {
      if (out.at(target) < w) out.put(target, w);
    });
  }
  return out;
}

EdgeWeightMap gray_erode(const EdgeWeightMap& f, const StructuringGraph& s, const GridGraph& g) {
  if (!(f.grid() == g)) {
    throw std::invalid_argument("weight map does not live on the given grid");
  }
  require_roots(s);
  const NeighborhoodIndex nbr(s, g);
  EdgeWeightMap out(g, EdgeWeightMap::kTop);
  for (std::int32_t e = 0; e < g.edge_count(); ++e) {
    EdgeSet n = nbr.neighborhood(e);
    std::uint8_t acc = EdgeWeightMap::kTop;
    n.for_each([&](std::int32_t source) {
      if (f.at(source) < acc) acc = f.at(source);
    });
    out.put(e, acc);
  }
  return out;
}

ConnectednessCheck check_connected_instance(const BinaryImage& input, const BinaryImage& output,
                                            Connectivity conn) {
  if (input.width != output.width || input.height != output.height) {
    throw std::invalid_argument("input and output dimensions differ");
  }
  const std::int32_t w = input.width;
  const std::int32_t h = input.height;
  std::vector<std::int32_t> comp(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
  // Representative pixel of each component, for witness reporting.
  std::vector<PixelCoord> rep;
  std::vector<std::uint8_t> out_value;
  std::vector<PixelCoord> out_value_at;

  ConnectednessCheck result;
  result.connected = true;

  const auto idx = [w](std::int32_t r, std::int32_t c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
  };

  for (std::int32_t r0 = 0; r0 < h; ++r0) {
    for (std::int32_t c0 = 0; c0 < w; ++c0) {
      if (comp[idx(r0, c0)] >= 0) continue;
      const std::uint8_t value = input.at(r0, c0);
      const std::int32_t id = static_cast<std::int32_t>(rep.size());
      rep.push_back({r0, c0});
      out_value.push_back(output.at(r0, c0));
      out_value_at.push_back({r0, c0});
      std::deque<PixelCoord> queue{{r0, c0}};
      comp[idx(r0, c0)] = id;
      while (!queue.empty()) {
        const PixelCoord p = queue.front();
        queue.pop_front();
        if (output.at(p.row, p.col) != out_value[static_cast<std::size_t>(id)] &&
            result.connected) {
          result.connected = false;
          result.witness = FlatZoneWitness{out_value_at[static_cast<std::size_t>(id)], p, value != 0};
        }
        for (std::int32_t dr = -1; dr <= 1; ++dr) {
          for (std::int32_t dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (conn == Connectivity::Four && dr != 0 && dc != 0) continue;
            const PixelCoord q{p.row + dr, p.col + dc};
            if (q.row < 0 || q.row >= h || q.col < 0 || q.col >= w) continue;
            if (comp[idx(q.row, q.col)] >= 0) continue;
            if (input.at(q.row, q.col) != value) continue;
            comp[idx(q.row, q.col)] = id;
            queue.push_back(q);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace gmorph
