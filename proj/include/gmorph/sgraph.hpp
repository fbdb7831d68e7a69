#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gmorph {

/// Small simple graph whose edges carry root/bud roles. Roots are the edges
/// matched onto an image edge when embedding; buds are the edges whose images
/// are emitted (dilation) or tested for containment (erosion, opening).
/// Vertices are ids 0..vertex_count-1; at most kMaxVertices of them so that
/// embedding enumeration stays cheap.
class StructuringGraph {
 public:
  static constexpr int kMaxVertices = 16;

  struct Edge {
    std::int8_t u = 0;
    std::int8_t v = 0;  // u < v
    bool root = false;
    bool bud = false;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  /// Validates and canonicalizes: endpoints in range, no self-loops, no
  /// duplicate edges, vertex cap respected. Edges are stored sorted by
  /// (u, v). Violations raise std::invalid_argument.
  StructuringGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int root_count() const { return root_count_; }
  int bud_count() const { return bud_count_; }
  bool has_roots() const { return root_count_ > 0; }
  bool has_buds() const { return bud_count_ > 0; }

  /// Neighbour bitmask of vertex v (bit i set when {v, i} is an edge).
  std::uint16_t adjacency(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  /// True when the graph has one connected component containing every vertex.
  /// Embedding enumeration has a translation-invariant fast path only for
  /// connected graphs.
  bool connected() const;

  friend bool operator==(const StructuringGraph&, const StructuringGraph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint16_t> adj_;
  int root_count_ = 0;
  int bud_count_ = 0;
};

enum class BuiltinSgraph { Single, TriangleOdd, TriangleEven, Square, Grid3 };

/// The built-in structuring graphs:
///   Single       one edge that is both root and bud; dilation and erosion
///                become the identity.
///   TriangleOdd  3-vertex triangle, one root edge, the other two edges buds.
///                Needs an Eight grid to embed at all. Companion of the
///                axis-step distance flavour.
///   TriangleEven the same triangle with the root on another edge, as the
///                diagonal-step companion. As unlabeled operators the two
///                triangles coincide; see the doc of distance_map.
///   Square       4-cycle with one root edge and the opposite edge as bud.
///   Grid3        3x3 grid graph (12 edges), every edge both root and bud;
///                the symmetric workhorse for skeletonization.
StructuringGraph builtin_sgraph(BuiltinSgraph which);

std::string_view builtin_sgraph_name(BuiltinSgraph which);
std::optional<BuiltinSgraph> builtin_sgraph_by_name(std::string_view name);

/// Identifies a graph that is field-for-field equal to a builtin.
std::optional<BuiltinSgraph> find_builtin(const StructuringGraph& s);

/// Line-oriented text format. '#' starts a comment; blank lines are ignored.
///   v <id>            declares a vertex (ids must form 0..k-1)
///   e <u> <v> <flags> declares an edge; flags is a word over {r, b} and may
///                     be omitted for an edge that is neither root nor bud
/// Errors (unknown directive, dangling vertex id, duplicate edge, cap
/// exceeded, non-dense ids) raise ParseError with the offending line number.
StructuringGraph parse_sgraph(std::string_view text);

std::string serialize_sgraph(const StructuringGraph& s);

}  // namespace gmorph
