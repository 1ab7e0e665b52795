#include "qscreen/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qscreen/builtin.hpp"

namespace qscreen {

namespace {

struct Line {
  int number;
  std::vector<long long> values;
};

// Non-blank, non-comment lines parsed as integers.
std::vector<Line> integer_lines(std::istream& in, const std::string& source) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    Line line{number, {}};
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(source, number, "expected an integer, got '" + tok + "'");
      line.values.push_back(v);
    }
    out.push_back(std::move(line));
  }
  return out;
}

int to_int(long long v, const std::string& source, int line) {
  if (v < -(1LL << 30) || v > (1LL << 30)) throw ParseError(source, line, "value out of range");
  return static_cast<int>(v);
}

}  // namespace

Design read_design(std::istream& in, bool factors_as_rows, const std::string& source) {
  const auto lines = integer_lines(in, source);
  if (lines.empty()) throw ParseError(source, 0, "missing header line 'n m s_1 ... s_m'");
  const Line& header = lines.front();
  if (header.values.size() < 2) throw ParseError(source, header.number, "header needs 'n m s_1 ... s_m'");
  const long long n = header.values[0], m = header.values[1];
  if (n < 1) throw ParseError(source, header.number, "run count must be positive");
  if (m < 1) throw ParseError(source, header.number, "factor count must be positive");
  if (static_cast<long long>(header.values.size()) != 2 + m) {
    throw ParseError(source, header.number,
                     "header declares " + std::to_string(m) + " factors but lists " +
                         std::to_string(header.values.size() - 2) + " level counts");
  }
  std::vector<int> levels;
  for (long long j = 0; j < m; ++j) levels.push_back(to_int(header.values[2 + j], source, header.number));

  const long long rows = factors_as_rows ? m : n;
  const long long cols = factors_as_rows ? n : m;
  if (static_cast<long long>(lines.size()) - 1 != rows) {
    throw ParseError(source, lines.back().number,
                     "expected " + std::to_string(rows) + " data rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<int> cells(static_cast<std::size_t>(n * m));
  for (long long r = 0; r < rows; ++r) {
    const Line& line = lines[r + 1];
    if (static_cast<long long>(line.values.size()) != cols) {
      throw ParseError(source, line.number,
                       "expected " + std::to_string(cols) + " values, found " + std::to_string(line.values.size()));
    }
    for (long long c = 0; c < cols; ++c) {
      const long long run = factors_as_rows ? c : r;
      const long long factor = factors_as_rows ? r : c;
      const int v = to_int(line.values[c], source, line.number);
      if (v < 0 || v >= levels[factor]) {
        throw ParseError(source, line.number,
                         "level " + std::to_string(v) + " outside 0.." + std::to_string(levels[factor] - 1) +
                             " for factor " + std::to_string(factor + 1));
      }
      cells[run * m + factor] = v;
    }
  }
  try {
    return validate(std::move(cells), static_cast<std::size_t>(n), std::move(levels));
  } catch (const DesignError& e) {
    throw ParseError(source, header.number, e.what());
  }
}

void write_design(std::ostream& out, const Design& design) {
  out << design.runs() << ' ' << design.factors();
  for (int s : design.level_counts()) out << ' ' << s;
  out << '\n';
  for (std::size_t i = 0; i < design.runs(); ++i) {
    for (std::size_t j = 0; j < design.factors(); ++j) out << (j ? " " : "") << design.at(i, j);
    out << '\n';
  }
}

Design load_design(const std::string& source, bool factors_as_rows) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_design(source.substr(prefix.size())).design;
  std::ifstream in(source);
  if (!in) throw ParseError(source, 0, "cannot open file");
  return read_design(in, factors_as_rows, source);
}

Matrix read_covariance(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string tok;
  std::string text;
  int number = 0, header_line = 0;
  long long n = -1;
  while (std::getline(in, text)) {
    ++number;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    std::istringstream ss(text);
    while (ss >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(source, number, "expected a number, got '" + tok + "'");
      if (n < 0) {
        if (v < 1 || v != static_cast<double>(static_cast<long long>(v))) {
          throw ParseError(source, number, "covariance size must be a positive integer");
        }
        n = static_cast<long long>(v);
        header_line = number;
      } else {
        values.push_back(v);
      }
    }
  }
  if (n < 0) throw ParseError(source, 0, "missing covariance size");
  if (static_cast<long long>(values.size()) != n * n) {
    throw ParseError(source, header_line,
                     "expected " + std::to_string(n * n) + " entries, found " + std::to_string(values.size()));
  }
  Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) m(i, j) = values[i * n + j];
  return m;
}

Matrix load_covariance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_covariance(in, path);
}

}  // namespace qscreen
