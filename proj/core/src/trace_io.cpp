#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "palette/engine.hpp"
#include "palette/errors.hpp"

namespace palette {

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "step,u,v,decision,color\n";
  std::size_t step = 1;
  for (const auto& s : trace.steps) {
    out << step++ << ',' << s.ends.u << ',' << s.ends.v << ',';
    if (s.decision.is_colored()) {
      out << "C," << s.decision.color().value() << '\n';
    } else {
      out << "R,\n";
    }
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Trace read_trace_csv(std::istream& in, int k) {
  Trace trace(k);
  trace.algorithm = "external";
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "step,u,v,decision,color") continue;
    }
    const auto fields = split(line, ',');
    const auto bad = [&](const std::string& why) {
      return StructuralError("trace line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 5) throw bad("expected 5 columns");
    std::size_t step = 0;
    Endpoints ends;
    if (!parse_number(fields[0], step) || !parse_number(fields[1], ends.u) || !parse_number(fields[2], ends.v)) {
      throw bad("non-numeric step or vertex");
    }
    if (step != trace.steps.size() + 1) throw bad("steps must be consecutive from 1");
    const EdgeId e = trace.graph.add_edge(ends.u, ends.v);
    if (fields[3] == "C") {
      int c = 0;
      if (!parse_number(fields[4], c)) throw bad("colored step without a color");
      trace.coloring.assign(trace.graph, e, Color(c));
      trace.steps.push_back({e, ends, Decision::colored(Color(c))});
    } else if (fields[3] == "R") {
      if (!fields[4].empty()) throw bad("rejected step with a color");
      trace.coloring.reject(trace.graph, e);
      trace.steps.push_back({e, ends, Decision::rejected()});
    } else {
      throw bad("decision must be C or R");
    }
  }
  return trace;
}

}  // namespace palette
