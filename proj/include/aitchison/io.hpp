#pragma once

// Count-table ingestion from CSV and conversion to probability tables.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aitchison/table.hpp"

namespace aitchison {

/// Nonnegative integer frequencies with optional category labels.
struct CountTable {
  Dims dims;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::vector<std::string> row_labels;  // empty when the file had no label column
  std::vector<std::string> col_labels;  // empty when the file had no header row

  std::int64_t total() const { return counts.sum(); }
  bool has_zero() const { return (counts.array() == 0).any(); }

  static CountTable from_matrix(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& m) {
    CountTable t;
    t.dims = Dims::checked(m.rows(), m.cols());
    if ((m.array() < 0).any()) throw Error(Errc::malformed_csv, "counts must be nonnegative");
    if (m.sum() < 1) throw Error(Errc::empty_input, "total count must be at least 1");
    t.counts = m;
    return t;
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses comma-separated counts with an optional header row and label
/// column, told apart from data by cells that are not integers.  Blank lines
/// are ignored.
inline CountTable parse_counts_csv(std::istream& in, const std::string& source = "<stream>") {
  struct Line {
    std::size_t number;
    std::vector<std::string> cells;
  };
  std::vector<Line> lines;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    if (number == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    if (detail::trim(text).empty()) continue;
    lines.push_back({number, detail::split_csv_line(text)});
  }
  if (lines.empty()) throw Error(Errc::empty_input, source + ": no data");

  auto all_int = [](const std::vector<std::string>& cells, std::size_t from) {
    for (std::size_t k = from; k < cells.size(); ++k)
      if (!detail::parse_int(cells[k])) return false;
    return true;
  };

  std::vector<std::string> header;
  std::size_t first_data = 0;
  // A text cell after the first column marks a header.  A text first cell
  // alone does too, unless later rows also start with text (a label column).
  bool later_rows_labelled = false;
  for (std::size_t r = 1; r < lines.size(); ++r)
    if (!detail::parse_int(lines[r].cells.front())) later_rows_labelled = true;
  const bool header_row =
      !all_int(lines.front().cells, 1) || (!detail::parse_int(lines.front().cells.front()) && !later_rows_labelled);
  if (header_row) {
    header = lines.front().cells;
    first_data = 1;
  }
  if (first_data >= lines.size()) throw Error(Errc::empty_input, source + ": header but no data rows");

  bool label_column = false;
  for (std::size_t r = first_data; r < lines.size(); ++r)
    if (!detail::parse_int(lines[r].cells.front())) label_column = true;

  const std::size_t width = lines[first_data].cells.size();
  const std::size_t cols = width - (label_column ? 1 : 0);
  const std::size_t rows = lines.size() - first_data;

  CountTable t;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
  for (std::size_t r = first_data; r < lines.size(); ++r) {
    const Line& line = lines[r];
    if (line.cells.size() != width) {
      throw Error(Errc::malformed_csv, source + ":" + std::to_string(line.number) + ": expected " +
                                           std::to_string(width) + " cells, found " +
                                           std::to_string(line.cells.size()));
    }
    if (label_column) t.row_labels.push_back(line.cells.front());
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string& cell = line.cells[c + (label_column ? 1 : 0)];
      auto v = detail::parse_int(cell);
      if (!v || *v < 0) {
        throw Error(Errc::malformed_csv, source + ":" + std::to_string(line.number) + ": cell '" + cell +
                                             "' is not a nonnegative integer");
      }
      m(static_cast<Index>(r - first_data), static_cast<Index>(c)) = *v;
    }
  }

  if (!header.empty()) {
    if (header.size() == cols + 1 && label_column) {
      header.erase(header.begin());
    } else if (header.size() != cols) {
      throw Error(Errc::malformed_csv, source + ":" + std::to_string(lines.front().number) +
                                           ": header has " + std::to_string(header.size()) + " cells for " +
                                           std::to_string(cols) + " columns");
    }
    t.col_labels = header;
  }

  if (rows < 2 || cols < 2) {
    throw Error(Errc::invalid_dims, source + ": table must be at least 2x2, got " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
  }
  if (m.sum() < 1) throw Error(Errc::empty_input, source + ": total count is zero");
  t.dims = Dims{static_cast<Index>(rows), static_cast<Index>(cols)};
  t.counts = std::move(m);
  return t;
}

inline CountTable parse_counts_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  return parse_counts_csv(in, path);
}

struct SmoothingPolicy {
  enum class Mode { reject, pseudocount };
  Mode mode = Mode::reject;
  double pseudocount = 0.5;

  static SmoothingPolicy reject() { return {}; }
  static SmoothingPolicy add(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw Error(Errc::invalid_params, "pseudocount must be a positive finite number");
    }
    return {Mode::pseudocount, alpha};
  }

  /// "reject", "pseudocount" or "pseudocount=<alpha>".
  static SmoothingPolicy parse(const std::string& text) {
    if (text == "reject") return reject();
    if (text == "pseudocount") return add(0.5);
    const std::string prefix = "pseudocount=";
    if (text.rfind(prefix, 0) == 0) {
      std::string num = text.substr(prefix.size());
      double alpha = 0.0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), alpha);
      if (ec != std::errc() || ptr != num.data() + num.size()) {
        throw Error(Errc::invalid_params, "bad pseudocount '" + num + "'");
      }
      return add(alpha);
    }
    throw Error(Errc::invalid_params, "unknown smoothing '" + text + "' (reject|pseudocount[=alpha])");
  }

  std::string name() const { return mode == Mode::reject ? "reject" : "pseudocount"; }
};

/// Sample proportions, after adding the pseudocount when the policy asks for it.
inline ProbabilityTable to_probability(const CountTable& counts, const SmoothingPolicy& policy) {
  Matrix raw = counts.counts.cast<double>();
  if (policy.mode == SmoothingPolicy::Mode::reject) {
    for (Index i = 0; i < raw.rows(); ++i)
      for (Index j = 0; j < raw.cols(); ++j)
        if (counts.counts(i, j) == 0) {
          throw Error(Errc::zero_cell_rejected,
                      "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") is zero; rerun with --smoothing pseudocount[=alpha] to add a constant to every cell");
        }
  } else {
    raw.array() += policy.pseudocount;
  }
  return closure(raw);
}

}  // namespace aitchison
