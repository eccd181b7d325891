#ifndef KCHEEGER_EDGE_LIST_IO_HPP
#define KCHEEGER_EDGE_LIST_IO_HPP

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"

// Edge-list text format:
//
//   # optional comments anywhere
//   n <vertex count>
//   <u> <v>
//   ...
//
// Blank lines are ignored; the trailing newline is optional.

namespace kcheeger {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_index(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line_no, "expected a nonnegative integer, got '" + std::string(token) + "'");
  return value;
}

} // namespace detail

inline Graph read_edge_list(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!n) {
      if (tokens.size() != 2 || tokens[0] != "n")
        throw ParseError(line_no, "expected header 'n <count>'");
      n = detail::parse_index(tokens[1], line_no);
    } else {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'u v'");
      auto u = detail::parse_index(tokens[0], line_no);
      auto v = detail::parse_index(tokens[1], line_no);
      if (u >= *n || v >= *n)
        throw ValidationError("line " + std::to_string(line_no) + ": vertex index >= n = " +
                              std::to_string(*n));
      if (u == v)
        throw ValidationError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                              std::to_string(u));
      const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
      if (!seen.insert(key).second)
        throw ValidationError("line " + std::to_string(line_no) + ": duplicate edge {" +
                              std::to_string(key.first) + "," + std::to_string(key.second) + "}");
      edges.push_back({key.first, key.second});
    }
    if (end == text.size()) break;
  }
  if (!n) throw ParseError(line_no, "missing header 'n <count>'");
  return Graph(*n, std::move(edges));
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

} // namespace kcheeger

#endif // KCHEEGER_EDGE_LIST_IO_HPP
