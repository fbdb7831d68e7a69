#pragma once

#include <string>
#include <string_view>

#include "gmorph/grid.hpp"
#include "gmorph/skeleton.hpp"

namespace gmorph {

/// Edge-set text format:
///   GME1 <width> <height> <4|8>
///   <u_row> <u_col> <v_row> <v_col>    one line per member edge, in
///                                      canonical index order
/// Blank lines and '#' comments are tolerated when reading; the writer emits
/// none, so write-read-write is byte stable.
std::string serialize_edgeset(const EdgeSet& es);
EdgeSet parse_edgeset(std::string_view text);

/// Skeleton decomposition text format:
///   GMSK1 <width> <height> <4|8>
///   POLICY include|exclude
///   SGRAPH <builtin name|inline>
///   S <line>          sgraph text, line by line (only when SGRAPH inline)
///   LAYER <n>         followed by edge lines as in GME1, per layer
///   RESIDUE <N>       followed by the residue's edge lines
///   TERMINATION emptied|fixpoint|cycle-detected|max-iterations
std::string serialize_decomposition(const SkeletonDecomposition& d);
SkeletonDecomposition parse_decomposition(std::string_view text);

}  // namespace gmorph
