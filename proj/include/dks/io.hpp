// Copyright 2026 The dks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DKS_IO_HPP_
#define DKS_IO_HPP_

// Edge-list and ground-truth sidecar text formats.
//
// Edge list:   first line "N M" (or "N1 N2 M" for a bipartite graph), then
//              M lines "u v" with 0-based endpoints. For simple graphs u < v.
//              Blank lines and '#' comments are skipped.
// Sidecar:     line 1 "k" (or "k1 k2"), line 2 the planted indices (bipartite:
//              the U-side indices, a '|' separator, the V-side indices),
//              line 3 the generating parameters as one-line JSON.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dks/errors.hpp"
#include "dks/graph.hpp"

namespace dks {

using AnyGraph = std::variant<Graph, BipartiteGraph>;

namespace detail {

/// Next non-blank line with comments stripped; false at end of stream.
inline bool next_content_line(std::istream& in, std::string& line,
                              int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

inline std::vector<long long> parse_ints(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::vector<long long> out;
  long long x;
  while (ss >> x) out.push_back(x);
  if (!ss.eof())
    throw ParseError("line " + std::to_string(lineno) +
                     ": expected integers, got '" + line + "'");
  return out;
}

}  // namespace detail

inline AnyGraph read_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!detail::next_content_line(in, line, lineno))
    throw ParseError("edge list is empty");
  const auto header = detail::parse_ints(line, lineno);
  if (header.size() != 2 && header.size() != 3)
    throw ParseError("line " + std::to_string(lineno) +
                     ": header must be 'N M' or 'N1 N2 M'");
  const bool bipartite = header.size() == 3;
  const long long m = header.back();
  if (m < 0) throw ParseError("negative edge count in header");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (detail::next_content_line(in, line, lineno)) {
    const auto uv = detail::parse_ints(line, lineno);
    if (uv.size() != 2)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'u v', got '" + line + "'");
    if (!bipartite && uv[0] >= uv[1])
      throw ParseError("line " + std::to_string(lineno) +
                       ": endpoints must satisfy u < v");
    edges.push_back({static_cast<int>(uv[0]), static_cast<int>(uv[1])});
  }
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("header announces " + std::to_string(m) +
                     " edges, found " + std::to_string(edges.size()));
  try {
    if (bipartite)
      return BipartiteGraph(static_cast<int>(header[0]),
                            static_cast<int>(header[1]), edges);
    return Graph(static_cast<int>(header[0]), edges);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid edge list: ") + e.what());
  }
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  out << g.n1() << ' ' << g.n2() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline AnyGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  try {
    return read_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Planted set(s) plus the parameters that generated the instance.
struct GroundTruth {
  NodeSubset planted;                   // V* (or U* for bipartite)
  std::optional<NodeSubset> planted_v;  // V* on the second side, bipartite only
  nlohmann::json params = nlohmann::json::object();

  bool bipartite() const { return planted_v.has_value(); }
};

inline void write_ground_truth(std::ostream& out, const GroundTruth& t) {
  auto put = [&out](const NodeSubset& s) {
    for (std::size_t i = 0; i < s.members().size(); ++i)
      out << (i ? " " : "") << s.members()[i];
  };
  out << t.planted.size();
  if (t.bipartite()) out << ' ' << t.planted_v->size();
  out << '\n';
  put(t.planted);
  if (t.bipartite()) {
    out << " | ";
    put(*t.planted_v);
  }
  out << '\n' << t.params.dump() << '\n';
}

/// Host sizes come from the graph the sidecar belongs to.
inline GroundTruth read_ground_truth(std::istream& in, int n1, int n2 = 0) {
  std::string line;
  int lineno = 0;
  if (!detail::next_content_line(in, line, lineno))
    throw ParseError("ground-truth sidecar is empty");
  const auto ks = detail::parse_ints(line, lineno);
  if (ks.empty() || ks.size() > 2)
    throw ParseError("sidecar line 1 must be 'k' or 'k1 k2'");
  const bool bipartite = ks.size() == 2;

  if (!std::getline(in, line)) throw ParseError("sidecar is missing line 2");
  ++lineno;
  std::string left = line, right;
  if (bipartite) {
    const auto bar = line.find('|');
    if (bar == std::string::npos)
      throw ParseError("bipartite sidecar line 2 needs a '|' separator");
    left = line.substr(0, bar);
    right = line.substr(bar + 1);
  }
  auto to_subset = [lineno](const std::string& text, long long k, int host) {
    std::vector<int> idx;
    for (long long x : detail::parse_ints(text, lineno))
      idx.push_back(static_cast<int>(x));
    if (static_cast<long long>(idx.size()) != k)
      throw ParseError("sidecar announces k=" + std::to_string(k) + " but lists " +
                       std::to_string(idx.size()) + " nodes");
    try {
      return NodeSubset(host, std::move(idx));
    } catch (const DomainError& e) {
      throw ParseError(std::string("sidecar: ") + e.what());
    }
  };

  GroundTruth t;
  t.planted = to_subset(left, ks[0], n1);
  if (bipartite) t.planted_v = to_subset(right, ks[1], n2);

  if (std::getline(in, line) && line.find_first_not_of(" \t\r") != std::string::npos) {
    try {
      t.params = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("sidecar line 3 is not JSON: ") + e.what());
    }
  }
  return t;
}

inline GroundTruth load_ground_truth(const std::string& path, int n1,
                                     int n2 = 0) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ground-truth file: " + path);
  try {
    return read_ground_truth(in, n1, n2);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace dks

#endif  // DKS_IO_HPP_
