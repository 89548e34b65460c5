#include "palette/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "palette/errors.hpp"

namespace palette {

namespace {

bool parse_vertex(const std::string& token, VertexId& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

std::vector<Endpoints> read_edge_list(std::istream& in) {
  std::vector<Endpoints> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    Endpoints e;
    if (b.empty() || (fields >> extra) || !parse_vertex(a, e.u) || !parse_vertex(b, e.v)) {
      throw StructuralError("edge list line " + std::to_string(line_no) + ": expected \"u v\", got \"" +
                            line + "\"");
    }
    edges.push_back(e);
  }
  return edges;
}

void write_edge_list(std::ostream& out, std::span<const Endpoints> edges) {
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

Graph build_graph(std::span<const Endpoints> edges) {
  Graph g;
  for (const auto& e : edges) g.add_edge(e.u, e.v);
  return g;
}

}  // namespace palette
