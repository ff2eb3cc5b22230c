#pragma once

// Text formats.
//
//   graph file      c <comment>
//                   p edge <vertex_count> <edge_count>
//                   e <u> <v>            (1-based, one per edge, file order)
//                   l <p> <q> <k>        (optional, reduced-instance params)
//                   port <name> <edge>   (optional, 0-based edge index)
//
//   labelling file  JSON: {"p":..,"q":..,"k":..,
//                          "labels":[{"u":1,"v":2,"label":0}, ...]}

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpq/core.hpp"

namespace lpq::io {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct GraphDocument {
  Graph graph;
  std::optional<Params> params;
  std::map<std::string, EdgeIndex> ports;
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline long long to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError(line, "expected integer, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "expected integer, got '" + s + "'");
  }
}

}  // namespace detail

inline GraphDocument read_graph_document(std::istream& in) {
  GraphDocument doc;
  bool header = false;
  long long declared_edges = 0;
  int line_no = 0;
  std::vector<std::pair<std::string, long long>> port_lines;
  std::vector<int> port_line_nos;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto t = detail::tokens(line);
    if (t.empty() || t[0] == "c") continue;
    if (t[0] == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      if (t.size() != 4 || t[1] != "edge") throw ParseError(line_no, "expected 'p edge <vertices> <edges>'");
      long long n = detail::to_int(t[2], line_no);
      declared_edges = detail::to_int(t[3], line_no);
      if (n < 0 || declared_edges < 0) throw ParseError(line_no, "negative count in header");
      doc.graph = Graph(static_cast<int>(n), {});
      header = true;
    } else if (t[0] == "e") {
      if (!header) throw ParseError(line_no, "edge before header");
      if (t.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      long long u = detail::to_int(t[1], line_no), v = detail::to_int(t[2], line_no);
      if (u < 1 || v < 1 || u > doc.graph.vertex_count() || v > doc.graph.vertex_count())
        throw ParseError(line_no, "vertex index out of range");
      try {
        doc.graph.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(line_no, err.what());
      }
    } else if (t[0] == "l") {
      if (t.size() != 4) throw ParseError(line_no, "expected 'l <p> <q> <k>'");
      try {
        doc.params = Params(static_cast<int>(detail::to_int(t[1], line_no)),
                            static_cast<int>(detail::to_int(t[2], line_no)),
                            static_cast<int>(detail::to_int(t[3], line_no)));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(line_no, err.what());
      }
    } else if (t[0] == "port") {
      if (t.size() != 3) throw ParseError(line_no, "expected 'port <name> <edge>'");
      port_lines.emplace_back(t[1], detail::to_int(t[2], line_no));
      port_line_nos.push_back(line_no);
    } else {
      throw ParseError(line_no, "unknown line type '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(0, "missing 'p edge' header");
  if (declared_edges != doc.graph.edge_count())
    throw ParseError(line_no, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                  std::to_string(doc.graph.edge_count()));
  for (std::size_t i = 0; i < port_lines.size(); ++i) {
    auto [name, idx] = port_lines[i];
    if (idx < 0 || idx >= doc.graph.edge_count()) throw ParseError(port_line_nos[i], "port edge out of range");
    if (!doc.ports.emplace(name, static_cast<EdgeIndex>(idx)).second)
      throw ParseError(port_line_nos[i], "duplicate port '" + name + "'");
  }
  return doc;
}

inline Graph read_graph(std::istream& in) { return read_graph_document(in).graph; }

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline void write_graph_document(std::ostream& out, const GraphDocument& doc) {
  write_graph(out, doc.graph);
  if (doc.params) out << "l " << doc.params->p << ' ' << doc.params->q << ' ' << doc.params->k << '\n';
  for (const auto& [name, e] : doc.ports) out << "port " << name << ' ' << e << '\n';
}

inline void write_port_manifest(std::ostream& out, const std::map<std::string, EdgeIndex>& ports) {
  for (const auto& [name, e] : ports) out << "port " << name << ' ' << e << '\n';
}

struct LabellingDocument {
  Params params;
  EdgeLabelling labelling;
};

inline nlohmann::ordered_json labelling_to_json(const Graph& g, const Params& params, const EdgeLabelling& c) {
  nlohmann::ordered_json doc;
  doc["p"] = params.p;
  doc["q"] = params.q;
  doc["k"] = params.k;
  auto labels = nlohmann::ordered_json::array();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!c.assigned(e)) continue;
    nlohmann::ordered_json rec;
    rec["u"] = g.edge(e).u + 1;
    rec["v"] = g.edge(e).v + 1;
    rec["label"] = c[e];
    labels.push_back(std::move(rec));
  }
  doc["labels"] = std::move(labels);
  return doc;
}

inline void write_labelling(std::ostream& out, const Graph& g, const Params& params, const EdgeLabelling& c) {
  out << labelling_to_json(g, params, c).dump(2) << '\n';
}

/// Reads a labelling against `g`. Records may appear in any order and may
/// leave edges unlabelled; the result is then partial.
inline LabellingDocument read_labelling(std::istream& in, const Graph& g) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(0, std::string("malformed labelling document: ") + err.what());
  }
  try {
    LabellingDocument out{Params(doc.at("p").get<int>(), doc.at("q").get<int>(), doc.at("k").get<int>()),
                          EdgeLabelling(g.edge_count())};
    int record = 0;
    for (const auto& rec : doc.at("labels")) {
      ++record;
      const int u = rec.at("u").get<int>(), v = rec.at("v").get<int>();
      auto e = (u >= 1 && v >= 1 && u <= g.vertex_count() && v <= g.vertex_count())
                   ? g.find_edge(u - 1, v - 1)
                   : std::nullopt;
      if (!e) throw ParseError(0, "record " + std::to_string(record) + ": no edge {" + std::to_string(u) + "," +
                                      std::to_string(v) + "} in graph");
      if (out.labelling.assigned(*e))
        throw ParseError(0, "record " + std::to_string(record) + ": edge labelled twice");
      out.labelling.set(*e, rec.at("label").get<int>());
    }
    return out;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(0, std::string("malformed labelling document: ") + err.what());
  }
}

inline LabellingDocument parse_labelling(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return read_labelling(in, g);
}

}  // namespace lpq::io
