#include "symorbit/loop_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace symorbit {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_loop(std::ostream& os, const DiscreteLoop& loop, const MassVector& masses) {
  os << "# N=" << loop.size() << " T=" << format_double(loop.period()) << " n=" << loop.bodies() << " masses=";
  for (Eigen::Index i = 0; i < masses.size(); ++i) os << (i ? " " : "") << format_double(masses[i]);
  os << '\n';
  for (int j = 0; j < loop.size(); ++j) {
    os << format_double(j * loop.time_step());
    for (Eigen::Index r = 0; r < loop.coords().rows(); ++r) os << ' ' << format_double(loop.coords()(r, j));
    os << '\n';
  }
}

namespace {

double parse_number(const std::string& token, int line, int column) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError("not a number: '" + token + "'", line, column);
}

// Splits on whitespace, remembering the 1-based column of each token.
std::vector<std::pair<std::string, int>> tokenize(const std::string& text) {
  std::vector<std::pair<std::string, int>> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tokens.emplace_back(text.substr(start, pos - start), static_cast<int>(start) + 1);
  }
  return tokens;
}

}  // namespace

LoopRecord read_loop(std::istream& is) {
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line)) throw ParseError("empty loop file", 1, 1);
  auto header = tokenize(line);
  if (header.empty() || header[0].first != "#") throw ParseError("expected '#' header line", 1, 1);

  int size = -1, n = -1;
  double period = -1;
  std::vector<double> masses;
  bool in_masses = false;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const auto& [tok, col] = header[k];
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (!in_masses) throw ParseError("unexpected header token '" + tok + "'", 1, col);
      masses.push_back(parse_number(tok, 1, col));
      continue;
    }
    in_masses = false;
    std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    const int vcol = col + static_cast<int>(eq) + 1;
    if (key == "N") {
      size = static_cast<int>(parse_number(value, 1, vcol));
    } else if (key == "T") {
      period = parse_number(value, 1, vcol);
    } else if (key == "n") {
      n = static_cast<int>(parse_number(value, 1, vcol));
    } else if (key == "masses") {
      in_masses = true;
      if (!value.empty()) masses.push_back(parse_number(value, 1, vcol));
    } else {
      throw ParseError("unknown header key '" + key + "'", 1, col);
    }
  }
  if (size < 4 || n < 2 || !(period > 0)) throw ParseError("header must define N >= 4, n >= 2 and T > 0", 1, 1);
  if (static_cast<int>(masses.size()) != n) throw ParseError("header lists " + std::to_string(masses.size()) + " masses for n=" + std::to_string(n), 1, 1);

  Eigen::MatrixXd coords(2 * n, size);
  int row = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0].first[0] == '#') continue;
    if (row >= size) throw ParseError("more rows than N=" + std::to_string(size), line_no, 1);
    if (static_cast<int>(tokens.size()) != 2 * n + 1)
      throw ParseError("expected " + std::to_string(2 * n + 1) + " columns, found " + std::to_string(tokens.size()), line_no, 1);
    for (int r = 0; r < 2 * n; ++r)
      coords(r, row) = parse_number(tokens[static_cast<std::size_t>(r + 1)].first, line_no, tokens[static_cast<std::size_t>(r + 1)].second);
    ++row;
  }
  if (row != size) throw ParseError("expected " + std::to_string(size) + " rows, found " + std::to_string(row), line_no, 1);

  MassVector m = Eigen::Map<const Eigen::VectorXd>(masses.data(), n);
  validate(m);
  return {DiscreteLoop(std::move(coords), period), std::move(m)};
}

void save_loop(const std::string& path, const DiscreteLoop& loop, const MassVector& masses) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_loop(os, loop, masses);
  if (!os) throw Error("failed writing '" + path + "'");
}

LoopRecord load_loop(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_loop(is);
}

}  // namespace symorbit
