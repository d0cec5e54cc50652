#include "mfrac_app/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mfrac/error.hpp"

namespace mfrac::app {

namespace {

struct Cell {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Cell> split(std::string_view line) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    cells.push_back({trim(line.substr(start, end - start)), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, std::size_t column,
                       const std::string& message) {
  throw DataError(std::string(source) + ":" + std::to_string(line) + ":" +
                  std::to_string(column) + ": " + message);
}

double parse_cell(const Cell& c, std::string_view source, std::size_t line) {
  const auto text = unquote(c.text);
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    fail(source, line, c.column, "not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) fail(source, line, c.column, "value is not finite");
  return v;
}

// Hands the first non-blank line to on_header and every later non-blank line
// to row(cells, line_number).
template <typename Header, typename Row>
void for_each_row(std::string_view text, std::string_view source, Header on_header, Row row) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!trim(line).empty()) {
      if (!have_header) {
        on_header(split(line));
        have_header = true;
      } else {
        row(split(line), line_no);
      }
    }
    if (nl == std::string_view::npos) break;
  }
  if (!have_header) fail(source, 1, 1, "empty file; expected a header row");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string write_series_csv(const TimeSeries& x) {
  std::string out = "t,x\n";
  out.reserve(x.size() * 44);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += format_double(x.times()[i]);
    out += ',';
    out += format_double(x.values()[i]);
    out += '\n';
  }
  return out;
}

TimeSeries read_series_csv(std::string_view text, std::string_view source) {
  std::vector<double> t, v;
  std::size_t last_line = 1;
  for_each_row(
      text, source,
      [&](const std::vector<Cell>& head) {
        if (head.size() != 2 || unquote(head[0].text) != "t" || unquote(head[1].text) != "x") {
          fail(source, 1, 1, "expected header 't,x'");
        }
      },
      [&](const std::vector<Cell>& cells, std::size_t line) {
        if (cells.size() != 2) {
          fail(source, line, cells.back().column,
               "expected 2 fields, found " + std::to_string(cells.size()));
        }
        t.push_back(parse_cell(cells[0], source, line));
        v.push_back(parse_cell(cells[1], source, line));
        last_line = line;
      });
  if (t.size() < 2) fail(source, last_line + 1, 1, "need at least two samples");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw DataError(std::string(source) + ": times must be strictly increasing (row " +
                      std::to_string(i + 1) + ")");
    }
  }
  return TimeSeries(std::move(t), std::move(v));
}

std::vector<double> read_price_csv(std::string_view text, std::string_view source) {
  std::vector<double> prices;
  std::size_t width = 0;
  for_each_row(
      text, source,
      [&](const std::vector<Cell>& head) {
        width = head.size();
        if (width == 2 && unquote(head[0].text) == "t") return;
        if (width != 1) fail(source, 1, 1, "expected a single price column or a 't,x' header");
      },
      [&](const std::vector<Cell>& cells, std::size_t line) {
        if (cells.size() != width) {
          fail(source, line, cells.back().column,
               "expected " + std::to_string(width) + " fields, found " +
                   std::to_string(cells.size()));
        }
        prices.push_back(parse_cell(cells.back(), source, line));
      });
  return prices;
}

std::string write_matrix_csv(const CovMatrix& c) {
  std::string out = "t";
  for (double t : c.grid()) {
    out += ',';
    out += format_double(t);
  }
  out += '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += format_double(c.grid()[i]);
    for (std::size_t j = 0; j < c.size(); ++j) {
      out += ',';
      out += format_double(c(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> csv_files_in(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw DataError("'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace mfrac::app
