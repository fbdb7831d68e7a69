#include "gmorph/sgraph.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gmorph/errors.hpp"

namespace gmorph {

StructuringGraph::StructuringGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count < 1 || vertex_count > kMaxVertices) {
    throw std::invalid_argument("structuring graph must have 1.." +
                                std::to_string(kMaxVertices) + " vertices");
  }
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= vertex_count) {
      throw std::invalid_argument("structuring graph edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("structuring graph must not contain self-loops");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw std::invalid_argument("structuring graph must not contain duplicate edges");
    }
  }
  adj_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    adj_[static_cast<std::size_t>(e.u)] |= static_cast<std::uint16_t>(1u << e.v);
    adj_[static_cast<std::size_t>(e.v)] |= static_cast<std::uint16_t>(1u << e.u);
    if (e.root) ++root_count_;
    if (e.bud) ++bud_count_;
  }
}

bool StructuringGraph::connected() const {
  std::uint32_t seen = 1;  // start from vertex 0
  std::uint32_t frontier = 1;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (int v = 0; v < vertex_count_; ++v) {
      if (frontier & (1u << v)) next |= adj_[static_cast<std::size_t>(v)];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (vertex_count_ >= 32 ? ~0u : (1u << vertex_count_) - 1u);
}

StructuringGraph builtin_sgraph(BuiltinSgraph which) {
  using E = StructuringGraph::Edge;
  switch (which) {
    case BuiltinSgraph::Single:
      return StructuringGraph(2, {E{0, 1, true, true}});
    case BuiltinSgraph::TriangleOdd:
      return StructuringGraph(3, {E{0, 1, true, false}, E{0, 2, false, true},
                                  E{1, 2, false, true}});
    case BuiltinSgraph::TriangleEven:
      return StructuringGraph(3, {E{0, 1, false, true}, E{0, 2, true, false},
                                  E{1, 2, false, true}});
    case BuiltinSgraph::Square:
      return StructuringGraph(4, {E{0, 1, true, false}, E{0, 3, false, false},
                                  E{1, 2, false, false}, E{2, 3, false, true}});
    case BuiltinSgraph::Grid3: {
      std::vector<E> edges;
      for (std::int8_t r = 0; r < 3; ++r) {
        for (std::int8_t c = 0; c < 3; ++c) {
          const std::int8_t v = static_cast<std::int8_t>(r * 3 + c);
          if (c + 1 < 3) edges.push_back(E{v, static_cast<std::int8_t>(v + 1), true, true});
          if (r + 1 < 3) edges.push_back(E{v, static_cast<std::int8_t>(v + 3), true, true});
        }
      }
      return StructuringGraph(9, std::move(edges));
    }
  }
  throw std::invalid_argument("unknown builtin structuring graph");
}

namespace {

constexpr std::array<std::pair<BuiltinSgraph, std::string_view>, 5> kBuiltinNames = {{
    {BuiltinSgraph::Single, "single"},
    {BuiltinSgraph::TriangleOdd, "triangle-odd"},
    {BuiltinSgraph::TriangleEven, "triangle-even"},
    {BuiltinSgraph::Square, "square"},
    {BuiltinSgraph::Grid3, "grid3"},
}};

}  // namespace

std::string_view builtin_sgraph_name(BuiltinSgraph which) {
  for (const auto& [b, name] : kBuiltinNames) {
    if (b == which) return name;
  }
  return "?";
}

std::optional<BuiltinSgraph> builtin_sgraph_by_name(std::string_view name) {
  for (const auto& [b, n] : kBuiltinNames) {
    if (n == name) return b;
  }
  return std::nullopt;
}

std::optional<BuiltinSgraph> find_builtin(const StructuringGraph& s) {
  for (const auto& [b, name] : kBuiltinNames) {
    if (builtin_sgraph(b) == s) return b;
  }
  return std::nullopt;
}

StructuringGraph parse_sgraph(std::string_view text) {
  std::set<int> declared;
  std::vector<StructuringGraph::Edge> edges;
  int max_id = -1;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string tag;
    if (!(line >> tag)) continue;  // blank
    if (tag == "v") {
      int id = -1;
      if (!(line >> id) || id < 0) {
        throw ParseError("expected 'v <id>' with a nonnegative id", lineno);
      }
      if (id >= StructuringGraph::kMaxVertices) {
        throw ParseError("vertex id " + std::to_string(id) + " exceeds the cap of " +
                             std::to_string(StructuringGraph::kMaxVertices) + " vertices",
                         lineno);
      }
      if (!declared.insert(id).second) {
        throw ParseError("vertex " + std::to_string(id) + " declared twice", lineno);
      }
      max_id = std::max(max_id, id);
      std::string extra;
      if (line >> extra) throw ParseError("trailing tokens after vertex declaration", lineno);
    } else if (tag == "e") {
      int u = -1, v = -1;
      if (!(line >> u >> v)) {
        throw ParseError("expected 'e <u> <v> [flags]'", lineno);
      }
      for (int id : {u, v}) {
        if (!declared.count(id)) {
          throw ParseError("edge references undeclared vertex " + std::to_string(id), lineno);
        }
      }
      if (u == v) throw ParseError("self-loops are not allowed", lineno);
      StructuringGraph::Edge e;
      e.u = static_cast<std::int8_t>(std::min(u, v));
      e.v = static_cast<std::int8_t>(std::max(u, v));
      std::string flags;
      if (line >> flags) {
        for (char f : flags) {
          if (f == 'r') {
            e.root = true;
          } else if (f == 'b') {
            e.bud = true;
          } else {
            throw ParseError(std::string("unknown edge flag '") + f + "'", lineno);
          }
        }
        std::string extra;
        if (line >> extra) throw ParseError("trailing tokens after edge flags", lineno);
      }
      for (const auto& prev : edges) {
        if (prev.u == e.u && prev.v == e.v) {
          throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v),
                           lineno);
        }
      }
      edges.push_back(e);
    } else {
      throw ParseError("unknown directive '" + tag + "'", lineno);
    }
  }
  if (declared.empty()) throw ParseError("structuring graph has no vertices");
  if (static_cast<int>(declared.size()) != max_id + 1) {
    throw ParseError("vertex ids must be exactly 0.." + std::to_string(declared.size() - 1));
  }
  try {
    return StructuringGraph(max_id + 1, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

std::string serialize_sgraph(const StructuringGraph& s) {
  std::ostringstream out;
  for (int v = 0; v < s.vertex_count(); ++v) out << "v " << v << "\n";
  for (const auto& e : s.edges()) {
    out << "e " << int(e.u) << " " << int(e.v);
    if (e.root || e.bud) {
      out << " ";
      if (e.root) out << "r";
      if (e.bud) out << "b";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gmorph
