#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmorph/grid.hpp"
#include "gmorph/morph.hpp"
#include "gmorph/sgraph.hpp"

namespace gmorph {

/// Why iterated erosion stopped. Edge-based erosion is not anti-extensive, so
/// besides emptying out the iteration can reach a nonempty fixpoint, revisit
/// an earlier state, or exhaust the iteration budget; all four outcomes are
/// data, not errors, and reconstruction is exact for each of them.
enum class Termination { Emptied, Fixpoint, CycleDetected, MaxIterations };

std::string_view termination_name(Termination t);

/// Multiscale skeleton: layers[n] = E_n \ dilate(E_{n+1}) for the erosion
/// iterates E_0 = M, E_{n+1} = erode(E_n), together with the final iterate
/// E_N (the residue) that makes reconstruction exact.
struct SkeletonDecomposition {
  std::vector<EdgeSet> layers;  // skel_0 .. skel_{N-1}
  EdgeSet residue;              // E_N
  std::int32_t residue_index = 0;
  Termination termination = Termination::Emptied;
  VacuousPolicy policy = VacuousPolicy::Include;
  StructuringGraph sgraph;
  std::string sgraph_id;  // builtin name, or "inline" for custom graphs

  const GridGraph& grid() const { return residue.grid(); }
};

std::int32_t default_max_iterations(const GridGraph& g);

/// Iterates erosion, recording one skeleton layer per scale until the first
/// of: E_N empty, E_{N+1} = E_N, E_{N+1} seen before, or N = max_iter.
SkeletonDecomposition skeletonize(const EdgeSet& m, const StructuringGraph& s,
                                  const GridGraph& g, VacuousPolicy policy,
                                  std::int32_t max_iter);
SkeletonDecomposition skeletonize(const EdgeSet& m, const StructuringGraph& s,
                                  const GridGraph& g, VacuousPolicy policy);

/// Union of dilate^n(layers[n]) for k <= n < N plus dilate^N(residue).
/// k = 0 rebuilds the original set exactly; larger k coarsens monotonically.
/// k outside 0..N raises std::invalid_argument, as does a grid mismatch.
/// The second form reuses a prebuilt index for d's structuring graph.
EdgeSet reconstruct(const SkeletonDecomposition& d, const GridGraph& grid, std::int32_t k);
EdgeSet reconstruct(const SkeletonDecomposition& d, const GridGraph& grid, std::int32_t k,
                    const NeighborhoodIndex& nbr);

/// Per-pixel erosion-depth map. A pixel survives while incident to a
/// foreground edge; its value is the first iteration at which it is not.
/// Background pixels (never incident) hold 0; pixels that outlive the
/// iteration (fixpoint, cycle, or budget) hold kUnbounded.
struct DistanceMap {
  static constexpr std::uint32_t kUnbounded = 0xffffffffu;

  GridGraph grid;
  std::vector<std::uint32_t> values;  // row major

  explicit DistanceMap(const GridGraph& g)
      : grid(g), values(static_cast<std::size_t>(g.vertex_count()), 0) {}

  std::uint32_t at(std::int32_t row, std::int32_t col) const {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid.width()) +
                  static_cast<std::size_t>(col)];
  }
  void put(std::int32_t row, std::int32_t col, std::uint32_t v) {
    values[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid.width()) +
           static_cast<std::size_t>(col)] = v;
  }
};

DistanceMap distance_map(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                         VacuousPolicy policy, std::int32_t max_iter);

/// Step sets for the two grid distances: Odd uses the four axis neighbors,
/// Even the four diagonal ones.
enum class DistanceVariant { Odd, Even };

/// Breadth-first pixel distance from the background (pixels outside the
/// foreground), stepping through the variant's neighborhood. Foreground
/// pixels unreachable from any background pixel hold kUnreachable.
struct PixelDistance {
  static constexpr std::uint32_t kUnreachable = 0xffffffffu;
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint32_t> values;

  std::uint32_t at(std::int32_t row, std::int32_t col) const {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
};

PixelDistance pixel_distance_bfs(const BinaryImage& img, DistanceVariant variant);

/// Distance-map skeleton: keeps every foreground pixel whose distance value
/// is >= the value of each of its variant neighbors (plateau maxima stay).
BinaryImage skeleton_by_distance(const BinaryImage& img, DistanceVariant variant);

}  // namespace gmorph
