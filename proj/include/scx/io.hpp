#pragma once

// Plain-text complex files: one simplex per line, `v0 v1 ... vk weight`,
// whitespace separated, `#` starts a comment. Faces missing from the file are
// filled in with weight 1 on load.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scx/complex.hpp"

namespace scx {

namespace detail {

inline std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline SimplicialComplex read_complex(std::istream& in) {
  std::vector<WeightedSimplex> simplices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = detail::split_whitespace(view);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ParseError(line_no, "expected vertex labels followed by a weight");

    WeightedSimplex ws;
    for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
      Vertex v = 0;
      const auto tok = tokens[t];
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
        throw ParseError(line_no, "bad vertex label '" + std::string(tok) + "'");
      ws.vertices.push_back(v);
    }
    const auto wtok = tokens.back();
    const auto [ptr, ec] = std::from_chars(wtok.data(), wtok.data() + wtok.size(), ws.weight);
    if (ec != std::errc() || ptr != wtok.data() + wtok.size())
      throw ParseError(line_no, "bad weight '" + std::string(wtok) + "'");
    if (!(ws.weight > 0.0))
      throw Error(ErrorCode::NonPositiveWeight, "line " + std::to_string(line_no) + ": weight " + std::string(wtok));
    try {
      Simplex check(ws.vertices);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    simplices.push_back(std::move(ws));
  }
  return build_complex(simplices);
}

/// Dimension-ascending, lexicographic, weights with 17 significant digits.
inline void write_complex(std::ostream& out, const SimplicialComplex& complex) {
  for (int p = 0; p <= complex.dimension(); ++p) {
    const auto simplices = complex.simplices(p);
    const auto weights = complex.weights(p);
    for (std::size_t j = 0; j < simplices.size(); ++j) {
      for (const Vertex v : simplices[j].vertices()) out << v << ' ';
      out << detail::format_double(weights[j]) << '\n';
    }
  }
}

inline SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_complex(in);
}

inline void save_complex(const SimplicialComplex& complex, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_complex(out, complex);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace scx
