#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ninner/applications.hpp"
#include "ninner/linalg.hpp"
#include "ninner/scalar.hpp"

namespace ninner {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::string>> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(lineno, std::string(t));
  }
  return lines;
}

}  // namespace detail

template <class S>
S parse_scalar(std::string_view token) {
  return ScalarTraits<S>::parse(detail::trim(token));
}

// One vector per line, comma-separated entries; blank lines and '#' comments
// are skipped. Parse errors name the offending line.
template <class S>
std::vector<Vector<S>> read_vector_file(const std::string& path) {
  std::vector<Vector<S>> out;
  for (const auto& [lineno, text] : detail::read_lines(path)) {
    std::vector<S> coords;
    for (const std::string& tok : detail::split_csv_line(text)) {
      try {
        coords.push_back(parse_scalar<S>(tok));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), lineno);
      }
    }
    out.push_back(Vector<S>(std::move(coords)));
  }
  if (out.empty()) throw ParseError("file '" + path + "' contains no vectors");
  return out;
}

// Square matrix: one row per line, comma-separated, same lexicon as vectors.
template <class S>
SquareMatrix<S> read_matrix_file(const std::string& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError("file '" + path + "' contains no matrix rows");
  const std::size_t order = lines.size();
  std::vector<S> entries;
  entries.reserve(order * order);
  for (const auto& [lineno, text] : lines) {
    auto toks = detail::split_csv_line(text);
    if (toks.size() != order)
      throw ParseError("matrix row has " + std::to_string(toks.size()) +
                           " entries, expected " + std::to_string(order),
                       lineno);
    for (const std::string& tok : toks) {
      try {
        entries.push_back(parse_scalar<S>(tok));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), lineno);
      }
    }
  }
  return SquareMatrix<S>(order, std::move(entries));
}

// Header row naming columns, then data rows; columns are selected by name.
template <class S>
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<S>> columns;

  const std::vector<S>& column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return columns[i];
    throw ParseError("no column named '" + name + "'");
  }
};

template <class S>
Csv<S> read_csv(const std::string& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError("file '" + path + "' is empty");
  Csv<S> csv;
  csv.header = detail::split_csv_line(lines[0].second);
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    for (std::size_t j = i + 1; j < csv.header.size(); ++j)
      if (csv.header[i] == csv.header[j])
        throw ParseError("duplicate column name '" + csv.header[i] + "'", lines[0].first);
  csv.columns.resize(csv.header.size());
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& [lineno, text] = lines[r];
    auto toks = detail::split_csv_line(text);
    if (toks.size() != csv.header.size())
      throw ParseError("row has " + std::to_string(toks.size()) + " fields, expected " +
                           std::to_string(csv.header.size()),
                       lineno);
    for (std::size_t cidx = 0; cidx < toks.size(); ++cidx) {
      try {
        csv.columns[cidx].push_back(parse_scalar<S>(toks[cidx]));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), lineno);
      }
    }
  }
  return csv;
}

template <class S>
Dataset<S> make_dataset(const Csv<S>& csv, const std::string& xcol,
                        const std::string& ycol, const std::string& zcol) {
  return Dataset<S>(csv.column(xcol), csv.column(ycol), csv.column(zcol));
}

}  // namespace ninner
