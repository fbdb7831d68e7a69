#include "gmorph/formats.hpp"

#include <sstream>

#include "gmorph/errors.hpp"

namespace gmorph {

namespace {

std::string connectivity_token(Connectivity c) {
  return c == Connectivity::Four ? "4" : "8";
}

Connectivity parse_connectivity(const std::string& tok, int lineno) {
  if (tok == "4") return Connectivity::Four;
  if (tok == "8") return Connectivity::Eight;
  throw ParseError("connectivity must be 4 or 8, got '" + tok + "'", lineno);
}

void write_edges(std::ostringstream& out, const EdgeSet& es) {
  const GridGraph& g = es.grid();
  es.for_each([&](std::int32_t idx) {
    const GridEdge e = g.edge_at(idx);
    out << e.u.row << " " << e.u.col << " " << e.v.row << " " << e.v.col << "\n";
  });
}

/// Line cursor over a text blob; strips comments, skips blanks, tracks the
/// line number for error messages.
class Lines {
 public:
  explicit Lines(std::string_view text) : in_(std::string(text)) {}

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++lineno_;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t end = raw.size();
      while (end > 0 && (raw[end - 1] == ' ' || raw[end - 1] == '\t' || raw[end - 1] == '\r')) {
        --end;
      }
      raw.erase(end);
      std::size_t begin = 0;
      while (begin < raw.size() && (raw[begin] == ' ' || raw[begin] == '\t')) ++begin;
      if (begin == raw.size()) continue;
      out = raw.substr(begin);
      return true;
    }
    return false;
  }

  int lineno() const { return lineno_; }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

bool parse_edge_line(const std::string& line, const GridGraph& g, int lineno,
                     std::int32_t& index_out) {
  std::istringstream ls(line);
  std::int32_t ur, uc, vr, vc;
  if (!(ls >> ur >> uc >> vr >> vc)) return false;
  std::string extra;
  if (ls >> extra) throw ParseError("trailing tokens after edge line", lineno);
  const std::int32_t idx = g.try_edge_index({ur, uc}, {vr, vc});
  if (idx < 0) {
    throw ParseError("pixel pair (" + std::to_string(ur) + "," + std::to_string(uc) + ")-(" +
                         std::to_string(vr) + "," + std::to_string(vc) +
                         ") is not an edge of the grid",
                     lineno);
  }
  index_out = idx;
  return true;
}

}  // namespace

std::string serialize_edgeset(const EdgeSet& es) {
  std::ostringstream out;
  const GridGraph& g = es.grid();
  out << "GME1 " << g.width() << " " << g.height() << " "
      << connectivity_token(g.connectivity()) << "\n";
  write_edges(out, es);
  return out.str();
}

EdgeSet parse_edgeset(std::string_view text) {
  Lines lines(text);
  std::string line;
  if (!lines.next(line)) throw ParseError("empty edge-set file");
  std::istringstream header(line);
  std::string magic, conn;
  std::int32_t w = 0, h = 0;
  if (!(header >> magic >> w >> h >> conn) || magic != "GME1") {
    throw ParseError("expected header 'GME1 <width> <height> <4|8>'", lines.lineno());
  }
  GridGraph g(w, h, parse_connectivity(conn, lines.lineno()));
  EdgeSet es(g);
  while (lines.next(line)) {
    std::int32_t idx = -1;
    if (!parse_edge_line(line, g, lines.lineno(), idx)) {
      throw ParseError("expected '<u_row> <u_col> <v_row> <v_col>'", lines.lineno());
    }
    es.set(idx);
  }
  return es;
}

std::string serialize_decomposition(const SkeletonDecomposition& d) {
  std::ostringstream out;
  const GridGraph& g = d.grid();
  out << "GMSK1 " << g.width() << " " << g.height() << " "
      << connectivity_token(g.connectivity()) << "\n";
  out << "POLICY " << (d.policy == VacuousPolicy::Include ? "include" : "exclude") << "\n";
  out << "SGRAPH " << d.sgraph_id << "\n";
  if (!builtin_sgraph_by_name(d.sgraph_id)) {
    std::istringstream sg(serialize_sgraph(d.sgraph));
    std::string line;
    while (std::getline(sg, line)) out << "S " << line << "\n";
  }
  for (std::size_t n = 0; n < d.layers.size(); ++n) {
    out << "LAYER " << n << "\n";
    write_edges(out, d.layers[n]);
  }
  out << "RESIDUE " << d.residue_index << "\n";
  write_edges(out, d.residue);
  out << "TERMINATION " << termination_name(d.termination) << "\n";
  return out.str();
}

SkeletonDecomposition parse_decomposition(std::string_view text) {
  Lines lines(text);
  std::string line;
  if (!lines.next(line)) throw ParseError("empty decomposition file");
  std::istringstream header(line);
  std::string magic, conn;
  std::int32_t w = 0, h = 0;
  if (!(header >> magic >> w >> h >> conn) || magic != "GMSK1") {
    throw ParseError("expected header 'GMSK1 <width> <height> <4|8>'", lines.lineno());
  }
  const GridGraph g(w, h, parse_connectivity(conn, lines.lineno()));

  if (!lines.next(line)) throw ParseError("missing POLICY line");
  std::istringstream pol(line);
  std::string tag, value;
  if (!(pol >> tag >> value) || tag != "POLICY" || (value != "include" && value != "exclude")) {
    throw ParseError("expected 'POLICY include|exclude'", lines.lineno());
  }
  const VacuousPolicy policy =
      value == "include" ? VacuousPolicy::Include : VacuousPolicy::Exclude;

  if (!lines.next(line)) throw ParseError("missing SGRAPH line");
  std::istringstream sgline(line);
  std::string sgraph_id;
  if (!(sgline >> tag >> sgraph_id) || tag != "SGRAPH") {
    throw ParseError("expected 'SGRAPH <id>'", lines.lineno());
  }

  SkeletonDecomposition d{.layers = {},
                          .residue = EdgeSet(g),
                          .residue_index = 0,
                          .termination = Termination::Emptied,
                          .policy = policy,
                          .sgraph = builtin_sgraph(BuiltinSgraph::Single),
                          .sgraph_id = sgraph_id};

  bool have_line = lines.next(line);
  if (const auto builtin = builtin_sgraph_by_name(sgraph_id)) {
    d.sgraph = builtin_sgraph(*builtin);
  } else {
    std::string sgraph_text;
    while (have_line && line.rfind("S ", 0) == 0) {
      sgraph_text += line.substr(2);
      sgraph_text += "\n";
      have_line = lines.next(line);
    }
    if (sgraph_text.empty()) {
      throw ParseError("SGRAPH " + sgraph_id + " is not a builtin and no inline graph follows",
                       lines.lineno());
    }
    d.sgraph = parse_sgraph(sgraph_text);
  }

  // LAYER blocks, then RESIDUE, then TERMINATION.
  std::int32_t expected_layer = 0;
  while (have_line && line.rfind("LAYER", 0) == 0) {
    std::istringstream ls(line);
    std::int32_t n = -1;
    if (!(ls >> tag >> n) || n != expected_layer) {
      throw ParseError("expected 'LAYER " + std::to_string(expected_layer) + "'", lines.lineno());
    }
    ++expected_layer;
    EdgeSet layer(g);
    while ((have_line = lines.next(line))) {
      std::int32_t idx = -1;
      if (!parse_edge_line(line, g, lines.lineno(), idx)) break;
      layer.set(idx);
    }
    d.layers.push_back(std::move(layer));
  }

  if (!have_line || line.rfind("RESIDUE", 0) != 0) {
    throw ParseError("expected 'RESIDUE <N>'", lines.lineno());
  }
  std::istringstream rs(line);
  std::int32_t n = -1;
  if (!(rs >> tag >> n) || n != expected_layer) {
    throw ParseError("residue index must equal the layer count " + std::to_string(expected_layer),
                     lines.lineno());
  }
  d.residue_index = n;
  while ((have_line = lines.next(line))) {
    std::int32_t idx = -1;
    if (!parse_edge_line(line, g, lines.lineno(), idx)) break;
    d.residue.set(idx);
  }

  if (!have_line || line.rfind("TERMINATION", 0) != 0) {
    throw ParseError("expected 'TERMINATION <reason>'", lines.lineno());
  }
  std::istringstream ts(line);
  if (!(ts >> tag >> value)) throw ParseError("malformed TERMINATION line", lines.lineno());
  bool matched = false;
  for (Termination t : {Termination::Emptied, Termination::Fixpoint, Termination::CycleDetected,
                        Termination::MaxIterations}) {
    if (termination_name(t) == value) {
      d.termination = t;
      matched = true;
      break;
    }
  }
  if (!matched) throw ParseError("unknown termination reason '" + value + "'", lines.lineno());
  if (lines.next(line)) throw ParseError("unexpected content after TERMINATION", lines.lineno());
  return d;
}

}  // namespace gmorph
