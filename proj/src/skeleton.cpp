#include "gmorph/skeleton.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace gmorph {

namespace {

void require_positive(std::int32_t max_iter) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

struct SetHash {
  std::size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

/// Marks the endpoints of every member edge.
void incident_pixels(const EdgeSet& m, std::vector<std::uint8_t>& out) {
  std::fill(out.begin(), out.end(), 0);
  const GridGraph& g = m.grid();
  m.for_each([&](std::int32_t idx) {
    const GridEdge e = g.edge_at(idx);
    out[static_cast<std::size_t>(e.u.row) * static_cast<std::size_t>(g.width()) +
        static_cast<std::size_t>(e.u.col)] = 1;
    out[static_cast<std::size_t>(e.v.row) * static_cast<std::size_t>(g.width()) +
        static_cast<std::size_t>(e.v.col)] = 1;
  });
}

}  // namespace

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::Emptied: return "emptied";
    case Termination::Fixpoint: return "fixpoint";
    case Termination::CycleDetected: return "cycle-detected";
    case Termination::MaxIterations: return "max-iterations";
  }
  return "?";
}

std::int32_t default_max_iterations(const GridGraph& g) {
  return 4 * (g.width() + g.height());
}

SkeletonDecomposition skeletonize(const EdgeSet& m, const StructuringGraph& s,
                                  const GridGraph& g, VacuousPolicy policy,
                                  std::int32_t max_iter) {
  require_positive(max_iter);
  if (!(m.grid() == g)) {
    throw std::invalid_argument("edge set does not live on the given grid");
  }
  const NeighborhoodIndex nbr(s, g);

  SkeletonDecomposition d{.layers = {},
                          .residue = EdgeSet(g),
                          .residue_index = 0,
                          .termination = Termination::Emptied,
                          .policy = policy,
                          .sgraph = s,
                          .sgraph_id = std::string()};
  if (const auto builtin = find_builtin(s)) {
    d.sgraph_id = std::string(builtin_sgraph_name(*builtin));
  } else {
    d.sgraph_id = "inline";
  }

  std::unordered_set<EdgeSet, SetHash> seen;
  EdgeSet current = m;
  seen.insert(current);
  std::int32_t n = 0;
  for (;;) {
    if (current.empty()) {
      d.termination = Termination::Emptied;
      break;
    }
    if (n == max_iter) {
      d.termination = Termination::MaxIterations;
      break;
    }
    EdgeSet next = erode(current, nbr, policy);
    d.layers.push_back(current - dilate(next, nbr));  // skel_n
    ++n;
    if (next == current) {
      d.termination = Termination::Fixpoint;
      current = std::move(next);
      break;
    }
    if (seen.contains(next)) {
      d.termination = Termination::CycleDetected;
      current = std::move(next);
      break;
    }
    seen.insert(next);
    current = std::move(next);
  }
  d.residue = std::move(current);
  d.residue_index = n;
  return d;
}

SkeletonDecomposition skeletonize(const EdgeSet& m, const StructuringGraph& s,
                                  const GridGraph& g, VacuousPolicy policy) {
  return skeletonize(m, s, g, policy, default_max_iterations(g));
}

EdgeSet reconstruct(const SkeletonDecomposition& d, const GridGraph& grid, std::int32_t k) {
  return reconstruct(d, grid, k, NeighborhoodIndex(d.sgraph, grid));
}

EdgeSet reconstruct(const SkeletonDecomposition& d, const GridGraph& grid, std::int32_t k,
                    const NeighborhoodIndex& nbr) {
  if (!(d.grid() == grid)) {
    throw std::invalid_argument("decomposition does not live on the given grid");
  }
  if (!(nbr.sgraph() == d.sgraph) || !(nbr.grid() == grid)) {
    throw std::invalid_argument("index does not match the decomposition");
  }
  if (k < 0 || k > d.residue_index) {
    throw std::invalid_argument("k must lie in 0..N (N = " +
                                std::to_string(d.residue_index) + "), got " + std::to_string(k));
  }
  // Dilating a running union instead of each term separately: walking n from
  // N down to k, the accumulator picks up one dilation per level, so layer n
  // ends up dilated exactly n times by the time the walk reaches k.
  EdgeSet acc = d.residue;
  for (std::int32_t n = d.residue_index - 1; n >= k; --n) {
    acc = dilate(acc, nbr);
    acc |= d.layers[static_cast<std::size_t>(n)];
  }
  // Layers below k contribute nothing; the remaining k dilations that
  // δ^n(skel_n) still owes each term are applied to the union at once.
  for (std::int32_t i = 0; i < k; ++i) acc = dilate(acc, nbr);
  return acc;
}

DistanceMap distance_map(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                         VacuousPolicy policy, std::int32_t max_iter) {
  require_positive(max_iter);
  if (!(m.grid() == g)) {
    throw std::invalid_argument("edge set does not live on the given grid");
  }
  const NeighborhoodIndex nbr(s, g);

  DistanceMap dm(g);
  const std::size_t pixel_count = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint8_t> alive(pixel_count, 0);
  incident_pixels(m, alive);

  std::int64_t alive_count = 0;
  for (std::uint8_t a : alive) alive_count += a;
  if (alive_count == 0) return dm;  // all background, all zeros

  std::unordered_set<EdgeSet, SetHash> seen;
  EdgeSet current = m;
  seen.insert(current);
  std::vector<std::uint8_t> incident(pixel_count, 0);
  bool unbounded = false;
  for (std::int32_t n = 1; n <= max_iter; ++n) {
    current = erode(current, nbr, policy);
    incident_pixels(current, incident);
    for (std::size_t i = 0; i < pixel_count; ++i) {
      if (alive[i] && !incident[i]) {
        alive[i] = 0;
        --alive_count;
        dm.values[i] = static_cast<std::uint32_t>(n);
      }
    }
    if (alive_count == 0) break;
    if (!seen.insert(current).second) {
      // States repeat from here on; pixels still alive survived a full
      // period and will never drop out.
      unbounded = true;
      break;
    }
  }
  if (alive_count > 0) unbounded = true;
  if (unbounded) {
    for (std::size_t i = 0; i < pixel_count; ++i) {
      if (alive[i]) dm.values[i] = DistanceMap::kUnbounded;
    }
  }
  return dm;
}

PixelDistance pixel_distance_bfs(const BinaryImage& img, DistanceVariant variant) {
  static constexpr std::int32_t kOdd[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  static constexpr std::int32_t kEven[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const auto& steps = variant == DistanceVariant::Odd ? kOdd : kEven;

  PixelDistance out;
  out.width = img.width;
  out.height = img.height;
  out.values.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height),
                    PixelDistance::kUnreachable);
  std::deque<PixelCoord> queue;
  for (std::int32_t r = 0; r < img.height; ++r) {
    for (std::int32_t c = 0; c < img.width; ++c) {
      if (!img.at(r, c)) {
        out.values[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) +
                   static_cast<std::size_t>(c)] = 0;
        queue.push_back({r, c});
      }
    }
  }
  while (!queue.empty()) {
    const PixelCoord p = queue.front();
    queue.pop_front();
    const std::uint32_t base =
        out.values[static_cast<std::size_t>(p.row) * static_cast<std::size_t>(img.width) +
                   static_cast<std::size_t>(p.col)];
    for (const auto& s : steps) {
      const std::int32_t r = p.row + s[0];
      const std::int32_t c = p.col + s[1];
      if (r < 0 || r >= img.height || c < 0 || c >= img.width) continue;
      auto& v = out.values[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) +
                           static_cast<std::size_t>(c)];
      if (v != PixelDistance::kUnreachable) continue;
      v = base + 1;
      queue.push_back({r, c});
    }
  }
  return out;
}

BinaryImage skeleton_by_distance(const BinaryImage& img, DistanceVariant variant) {
  const PixelDistance dist = pixel_distance_bfs(img, variant);
  static constexpr std::int32_t kOdd[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  static constexpr std::int32_t kEven[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const auto& steps = variant == DistanceVariant::Odd ? kOdd : kEven;

  BinaryImage out(img.width, img.height);
  for (std::int32_t r = 0; r < img.height; ++r) {
    for (std::int32_t c = 0; c < img.width; ++c) {
      if (!img.at(r, c)) continue;
      const std::uint32_t v = dist.at(r, c);
      bool is_max = true;
      for (const auto& s : steps) {
        const std::int32_t nr = r + s[0];
        const std::int32_t nc = c + s[1];
        if (nr < 0 || nr >= img.height || nc < 0 || nc >= img.width) continue;
        if (dist.at(nr, nc) != PixelDistance::kUnreachable && dist.at(nr, nc) > v) {
          is_max = false;
          break;
        }
        if (dist.at(nr, nc) == PixelDistance::kUnreachable && v != PixelDistance::kUnreachable) {
          is_max = false;
          break;
        }
      }
      if (is_max) out.put(r, c, true);
    }
  }
  return out;
}

}  // namespace gmorph
