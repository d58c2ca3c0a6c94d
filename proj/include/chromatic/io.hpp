#pragma once

#include <array>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "chromatic/algebra.hpp"
#include "chromatic/colouring.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/quasigroup.hpp"
#include "chromatic/search.hpp"

namespace chromatic::io {

using json = nlohmann::ordered_json;

// Colouring documents:
//   {"signature":{"s":[...],"n":N},"vertices":M,"edges":[[i,j,c],...]}
// with i < j and edges sorted by (i,j).
inline json colouring_to_json(const EdgeColouring& g, const Signature& sig) {
  if (sig.n() != g.colour_count()) throw std::invalid_argument("signature and colouring disagree on n");
  json doc;
  doc["signature"]["s"] = sig.allowed();
  doc["signature"]["n"] = sig.n();
  doc["vertices"] = g.vertex_count();
  json edges = json::array();
  for (Vertex i = 0; i < g.vertex_count(); ++i)
    for (Vertex j = i + 1; j < g.vertex_count(); ++j) edges.push_back({i, j, static_cast<int>(g.at(i, j))});
  doc["edges"] = std::move(edges);
  return doc;
}

struct LoadedColouring {
  EdgeColouring colouring;
  Signature sig;
};

inline LoadedColouring colouring_from_json(const json& doc) {
  const auto& s = doc.at("signature");
  Signature sig(s.at("s").get<std::vector<int>>(), s.at("n").get<int>());
  const int m = doc.at("vertices").get<int>();
  if (m < 0) throw std::invalid_argument("negative vertex count");
  std::vector<Colour> cs(edge_count(m), 0);
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("edge entries must be [i,j,c]");
    int i = e[0].get<int>(), j = e[1].get<int>(), c = e[2].get<int>();
    if (i < 0 || j <= i || j >= m) throw std::invalid_argument("edge endpoints must satisfy 0 <= i < j < vertices");
    if (c < 1 || c > sig.n()) throw std::invalid_argument("edge colour outside 1..n");
    if (cs[edge_index(i, j)] != 0) throw std::invalid_argument("edge listed twice");
    cs[edge_index(i, j)] = static_cast<Colour>(c);
  }
  for (Colour c : cs)
    if (c == 0) throw std::invalid_argument("colouring leaves an edge uncoloured");
  return {EdgeColouring(m, sig.n(), std::move(cs)), sig};
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline json parse(const std::string& text) { return json::parse(text); }

// AtomStructure: {"atom_count":k,"identity":[...],"converse":[...],"triples":[[a,b,c],...]}
inline json atoms_to_json(const AtomStructure& x) {
  json doc;
  doc["atom_count"] = x.atom_count();
  doc["identity"] = x.identity_atoms().atoms();
  doc["converse"] = x.converse_map();
  json triples = json::array();
  for (const auto& t : x.triples()) triples.push_back({t[0], t[1], t[2]});
  doc["triples"] = std::move(triples);
  return doc;
}

inline AtomStructure atoms_from_json(const json& doc) {
  std::vector<AtomTriple> triples;
  for (const auto& t : doc.at("triples")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("triples must be [a,b,c]");
    triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  return AtomStructure(doc.at("atom_count").get<int>(), doc.at("converse").get<std::vector<Atom>>(),
                       doc.at("identity").get<std::vector<Atom>>(), triples);
}

// Cayley table: {"order":n,"table":[[...],...]}
inline json quasigroup_to_json(const Quasigroup& q) {
  json doc;
  doc["order"] = q.order();
  json rows = json::array();
  for (int i = 0; i < q.order(); ++i) {
    json row = json::array();
    for (int j = 0; j < q.order(); ++j) row.push_back(q(i, j));
    rows.push_back(std::move(row));
  }
  doc["table"] = std::move(rows);
  return doc;
}

inline Quasigroup quasigroup_from_json(const json& doc) {
  auto rows = doc.at("table").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(rows.size()) != doc.at("order").get<int>())
    throw std::invalid_argument("Cayley table size does not match order");
  return Quasigroup::from_rows(rows);
}

// Geometry: {"points":P,"lines":[[...],...],"blocks":[[line indices],...]}
inline json geometry_to_json(const Geometry& geo) {
  json doc;
  doc["points"] = geo.space.point_count;
  doc["lines"] = geo.space.lines;
  doc["blocks"] = geo.parallelism.blocks;
  return doc;
}

inline Geometry geometry_from_json(const json& doc) {
  Geometry geo;
  geo.space.point_count = doc.at("points").get<int>();
  geo.space.lines = doc.at("lines").get<std::vector<Line>>();
  geo.parallelism.blocks = doc.at("blocks").get<std::vector<std::vector<int>>>();
  return geo;
}

// One JSON record per m.
inline std::string transcript_jsonl(const Signature& sig, Level level, const SearchOutcome& outcome) {
  std::string out;
  for (const auto& rec : outcome.per_m) {
    json line;
    line["s"] = sig.allowed();
    line["n"] = sig.n();
    line["level"] = std::string(to_string(level));
    line["m"] = rec.m;
    line["status"] = std::string(to_string(rec.status));
    line["nodes"] = rec.nodes;
    line["seconds"] = rec.seconds;
    out += line.dump() + "\n";
  }
  return out;
}

// Graphviz palette: colour c uses palette[(c-1) % 12], with the X11 variant
// suffix 2, 3, ... on each further pass through the palette.
inline constexpr std::array<const char*, 12> dot_palette{"red",     "blue", "green", "orange", "purple",    "brown",
                                                          "magenta", "cyan", "gold",  "gray",   "turquoise", "orchid"};

inline std::string dot_colour_name(int c) {
  const int idx = (c - 1) % static_cast<int>(dot_palette.size());
  const int pass = (c - 1) / static_cast<int>(dot_palette.size());
  std::string name = dot_palette[idx];
  if (pass > 0) name += std::to_string(pass + 1);
  return name;
}

inline std::string to_dot(const EdgeColouring& g, const std::string& name = "colouring") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  os << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  for (Vertex i = 0; i < g.vertex_count(); ++i)
    for (Vertex j = i + 1; j < g.vertex_count(); ++j) {
      int c = g.at(i, j);
      os << "  " << i << " -- " << j << " [color=\"" << dot_colour_name(c) << "\", label=\"" << c << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace chromatic::io
