#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gmorph/embed.hpp"
#include "gmorph/grid.hpp"
#include "gmorph/sgraph.hpp"

namespace gmorph {

/// Treatment of edges whose neighborhood is empty during erosion. Include is
/// the literal reading of the defining formula (the empty set is a subset of
/// everything), and is the reason erosion can extend the foreground and is
/// not anti-extensive. Exclude additionally requires a nonempty neighborhood.
enum class VacuousPolicy { Include, Exclude };

/// Dilation: union of the neighborhoods of all member edges.
/// Requires nonempty root and bud sets and m on the given grid.
EdgeSet dilate(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g);
EdgeSet dilate(const EdgeSet& m, const NeighborhoodIndex& nbr);

/// Erosion: every grid edge whose neighborhood is contained in p (adjoint of
/// dilate under the Include policy). Requires a nonempty root set.
EdgeSet erode(const EdgeSet& p, const StructuringGraph& s, const GridGraph& g,
              VacuousPolicy policy);
EdgeSet erode(const EdgeSet& p, const NeighborhoodIndex& nbr, VacuousPolicy policy);

/// Structural opening: union of bud images over every embedding of S into
/// the grid (anchored anywhere) whose bud images all lie inside m. Requires
/// a nonempty bud set. Anti-extensive, increasing and idempotent.
EdgeSet open_structural(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g);

/// Compositions of the adjoint pair: open = dilate(erode(m)),
/// close = erode(dilate(m)), with the policy threaded to the erosion.
EdgeSet open_adjoint(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                     VacuousPolicy policy);
EdgeSet close_adjoint(const EdgeSet& m, const StructuringGraph& s, const GridGraph& g,
                      VacuousPolicy policy);
EdgeSet open_adjoint(const EdgeSet& m, const NeighborhoodIndex& nbr, VacuousPolicy policy);
EdgeSet close_adjoint(const EdgeSet& m, const NeighborhoodIndex& nbr, VacuousPolicy policy);

/// Total map from grid edges to 8-bit gray values with fixed lattice bounds
/// bottom = 0 and top = 255.
class EdgeWeightMap {
 public:
  static constexpr std::uint8_t kBottom = 0;
  static constexpr std::uint8_t kTop = 255;

  explicit EdgeWeightMap(const GridGraph& grid, std::uint8_t fill = 0)
      : grid_(grid), weights_(static_cast<std::size_t>(grid.edge_count()), fill) {}

  const GridGraph& grid() const { return grid_; }
  std::uint8_t at(std::int32_t index) const { return weights_[static_cast<std::size_t>(index)]; }
  void put(std::int32_t index, std::uint8_t w) { weights_[static_cast<std::size_t>(index)] = w; }
  const std::vector<std::uint8_t>& values() const { return weights_; }

  friend bool operator==(const EdgeWeightMap&, const EdgeWeightMap&) = default;

 private:
  GridGraph grid_;
  std::vector<std::uint8_t> weights_;
};

/// Grayscale dilation: out(e') = max of f over the edges whose neighborhood
/// contains e', empty max = bottom. Forms an adjunction with gray_erode.
EdgeWeightMap gray_dilate(const EdgeWeightMap& f, const StructuringGraph& s, const GridGraph& g);

/// Grayscale erosion: out(e) = min of f over the neighborhood of e,
/// empty min = top.
EdgeWeightMap gray_erode(const EdgeWeightMap& f, const StructuringGraph& s, const GridGraph& g);

/// Two pixels of one connected component of the input whose output values
/// differ, proving the pair (input, output) is not a connected-operator
/// instance.
struct FlatZoneWitness {
  PixelCoord first;
  PixelCoord second;
  bool input_foreground = false;
};

struct ConnectednessCheck {
  bool connected = false;
  std::optional<FlatZoneWitness> witness;
};

/// Certifies one input/output pair of a (would-be) connected operator: the
/// output flat-zone partition must be coarser than the input one, i.e. the
/// output is constant on every connected component of input foreground and
/// input background. The same connectivity is used for foreground and
/// background components. Dimension mismatch raises std::invalid_argument.
ConnectednessCheck check_connected_instance(const BinaryImage& input, const BinaryImage& output,
                                            Connectivity conn);

}  // namespace gmorph
