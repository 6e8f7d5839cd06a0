#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "modexp/graph.hpp"

namespace modexp {

// Edge-list text format:
//   # comment
//   p <n>            vertex count, exactly once, before any edge
//   e <u> <v> [w]    edge (loop when u == v); w is an integer or num/den, default 1
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag.front() == '#') continue;
    std::vector<std::string> args;
    for (std::string tok; fields >> tok;) args.push_back(tok);
    auto to_vertex = [&](const std::string& tok) {
      try {
        Ratio r = Ratio::parse(tok);
        if (!r.is_integer()) throw SyntaxError(line_no, "vertex id '" + tok + "' is not an integer");
        if (r.num() < 0 || r.num() >= n) {
          throw Error(Errc::vertex_out_of_range, "line " + std::to_string(line_no) + ": vertex " + tok);
        }
        return static_cast<Vertex>(r.num());
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        if (e.code() == Errc::vertex_out_of_range) throw;
        throw SyntaxError(line_no, "bad vertex id '" + tok + "'");
      }
    };
    if (tag == "p") {
      if (n >= 0) throw SyntaxError(line_no, "duplicate 'p' line");
      if (args.size() != 1) throw SyntaxError(line_no, "expected 'p <n>'");
      Ratio r{0};
      try {
        r = Ratio::parse(args[0]);
      } catch (const Error&) {
        throw SyntaxError(line_no, "bad vertex count '" + args[0] + "'");
      }
      if (!r.is_integer() || r.num() < 0 || r.num() > INT32_MAX) {
        throw SyntaxError(line_no, "bad vertex count '" + args[0] + "'");
      }
      n = static_cast<int>(r.num());
    } else if (tag == "e") {
      if (n < 0) throw SyntaxError(line_no, "edge before 'p' line");
      if (args.size() != 2 && args.size() != 3) throw SyntaxError(line_no, "expected 'e <u> <v> [w]'");
      Edge e;
      e.u = to_vertex(args[0]);
      e.v = to_vertex(args[1]);
      if (args.size() == 3) {
        const std::string& w = args[2];
        if (w.find('.') != std::string::npos) throw SyntaxError(line_no, "weight must be integer or num/den");
        try {
          e.w = Ratio::parse(w);
        } catch (const Error&) {
          throw SyntaxError(line_no, "bad weight '" + w + "'");
        }
        if (e.w.sign() <= 0) throw Error(Errc::non_positive_weight, "line " + std::to_string(line_no) + ": " + w);
      }
      edges.push_back(e);
    } else {
      throw SyntaxError(line_no, "unknown record '" + tag + "'");
    }
  }
  if (n < 0) throw SyntaxError(line_no, "missing 'p' line");
  return Graph(n, std::move(edges));
}

// Canonical text: 'p' line, then edges sorted by (u, v, w) in lowest terms.
inline std::string serialize_graph(const Graph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  std::string out = "p " + std::to_string(g.n()) + "\n";
  for (const Edge& e : edges) {
    out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + e.w.str() + "\n";
  }
  return out;
}

}  // namespace modexp
