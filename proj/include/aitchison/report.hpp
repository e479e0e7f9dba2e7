#pragma once

// The decomposition report: an in-memory document, its canonical JSON form
// and per-table CSV renderings.
//
// JSON layout (meta.schema_version = 1):
//   meta         tool, version, input (path, rows, cols, total_count, labels),
//                smoothing (mode, pseudocount), tolerances
//   proportions  I x J array
//   tables       part name -> I x J array (ind, int; square inputs add sym,
//                skew, syind, skind, syint, skint, QS, GMH)
//   margins      "proportions" and each part -> {row, col} closed geometric margins
//   measures     norm, norm_squared, deviance; square inputs add norm_sym,
//                norm_sym_squared, E2, Q2, M2
//   arrays       skewness | quasi_skewness | heterogeneity ->
//                {degenerate, measure, percent}; square inputs only
//   odds_ratios  input, and QS for square inputs
// Keys are sorted and floats written with 17 significant digits, so
// serialize -> parse -> serialize is byte-identical.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitchison/io.hpp"
#include "aitchison/measures.hpp"

namespace aitchison {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ReportDocument {
  struct Input {
    std::string path;
    Dims dims;
    std::int64_t total_count = 0;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
  };
  struct ArrayEntry {
    ContributionKind kind = ContributionKind::skewness;
    bool degenerate = false;
    double measure = 0.0;
    Matrix percent;
  };

  Input input;
  SmoothingPolicy smoothing;
  ProbabilityTable proportions;
  std::map<std::string, ProbabilityTable> tables;
  bool square = false;
  MeasureReport measures;  // only norm, norm_squared and deviance when !square
  std::vector<ArrayEntry> arrays;
  Matrix odds_input;
  std::optional<Matrix> odds_qs;
};

inline ReportDocument build_report(const ProbabilityTable& p, ReportDocument::Input input,
                                   SmoothingPolicy smoothing) {
  ReportDocument doc{std::move(input), smoothing, p, {}, p.square(), {}, {}, {}, std::nullopt};
  doc.input.dims = p.dims();
  doc.odds_input = local_odds_ratios(p).matrix();
  if (!p.square()) {
    doc.tables.emplace("ind", independent_part(p));
    doc.tables.emplace("int", interaction_part(p));
    doc.measures.norm_squared = aitchison_squared_norm(p);
    doc.measures.norm = std::sqrt(doc.measures.norm_squared);
    doc.measures.deviance = aitchison_squared_norm(doc.tables.at("int"));
    return doc;
  }
  DecompositionBundle bundle(p);
  for (Subspace s : kAllSubspaces) doc.tables.emplace(std::string(to_string(s)), bundle.part(s));
  doc.measures = measure_report(bundle);
  for (ContributionKind k :
       {ContributionKind::skewness, ContributionKind::quasi_skewness, ContributionKind::heterogeneity}) {
    ContributionArray a = contribution_array(bundle, k);
    doc.arrays.push_back({k, a.degenerate, a.measure, 100.0 * a.values});
  }
  doc.odds_qs = local_odds_ratios(bundle.qs()).matrix();
  return doc;
}

namespace json_io {

using nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw Error(Errc::invariant_violation, where + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(Errc::invariant_violation, where + ": ragged matrix");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

inline json margins_json(const ProbabilityTable& t) {
  return json{{"row", vector_to_json(row_geometric_margin(t))}, {"col", vector_to_json(col_geometric_margin(t))}};
}

inline json to_json(const ReportDocument& doc) {
  json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["tool"] = "aitchison";
  meta["tool_version"] = kToolVersion;
  meta["input"] = {{"path", doc.input.path},
                   {"rows", doc.input.dims.rows},
                   {"cols", doc.input.dims.cols},
                   {"total_count", doc.input.total_count},
                   {"row_labels", doc.input.row_labels},
                   {"col_labels", doc.input.col_labels}};
  meta["smoothing"] = {{"mode", doc.smoothing.name()}, {"pseudocount", doc.smoothing.pseudocount}};
  meta["tolerances"] = {{"sum", kSumTolerance},
                        {"reconstruction", 1e-10},
                        {"orthogonality", 1e-9},
                        {"degenerate_measure", kDegenerateMeasure}};

  json tables = json::object();
  json margins = json::object();
  margins["proportions"] = margins_json(doc.proportions);
  for (const auto& [name, table] : doc.tables) {
    tables[name] = matrix_to_json(table.matrix());
    margins[name] = margins_json(table);
  }

  json measures = {{"norm", doc.measures.norm},
                   {"norm_squared", doc.measures.norm_squared},
                   {"deviance", doc.measures.deviance}};
  if (doc.square) {
    measures["norm_sym"] = doc.measures.norm_sym;
    measures["norm_sym_squared"] = doc.measures.norm_sym_squared;
    measures["E2"] = doc.measures.e2;
    measures["Q2"] = doc.measures.q2;
    measures["M2"] = doc.measures.m2;
  }

  json arrays = json::object();
  for (const auto& a : doc.arrays) {
    arrays[std::string(to_string(a.kind))] = {
        {"degenerate", a.degenerate}, {"measure", a.measure}, {"percent", matrix_to_json(a.percent)}};
  }

  json odds = {{"input", matrix_to_json(doc.odds_input)}};
  if (doc.odds_qs) odds["QS"] = matrix_to_json(*doc.odds_qs);

  return json{{"meta", meta},         {"proportions", matrix_to_json(doc.proportions.matrix())},
              {"tables", tables},     {"margins", margins},
              {"measures", measures}, {"arrays", arrays},
              {"odds_ratios", odds}};
}

inline ReportDocument from_json(const json& j) {
  try {
    const json& meta = j.at("meta");
    if (meta.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(Errc::invariant_violation, "unsupported schema_version");
    }
    const json& in = meta.at("input");
    ReportDocument::Input input{in.at("path").get<std::string>(),
                                Dims::checked(in.at("rows").get<Index>(), in.at("cols").get<Index>()),
                                in.at("total_count").get<std::int64_t>(),
                                in.at("row_labels").get<std::vector<std::string>>(),
                                in.at("col_labels").get<std::vector<std::string>>()};
    SmoothingPolicy smoothing;
    if (meta.at("smoothing").at("mode").get<std::string>() == "pseudocount") {
      smoothing = SmoothingPolicy::add(meta.at("smoothing").at("pseudocount").get<double>());
    } else {
      smoothing.pseudocount = meta.at("smoothing").at("pseudocount").get<double>();
    }

    ReportDocument doc{input, smoothing,
                       ProbabilityTable::validated(matrix_from_json(j.at("proportions"), "proportions")),
                       {}, false, {}, {}, {}, std::nullopt};
    if (doc.proportions.dims() != input.dims) throw Error(Errc::dim_mismatch, "proportions vs meta.input");
    doc.square = doc.proportions.square();
    for (const auto& [name, value] : j.at("tables").items()) {
      auto table = ProbabilityTable::validated(matrix_from_json(value, "tables." + name));
      if (table.dims() != input.dims) throw Error(Errc::dim_mismatch, "tables." + name);
      doc.tables.emplace(name, std::move(table));
    }
    const json& m = j.at("measures");
    doc.measures.norm = m.at("norm").get<double>();
    doc.measures.norm_squared = m.at("norm_squared").get<double>();
    doc.measures.deviance = m.at("deviance").get<double>();
    if (doc.square) {
      doc.measures.norm_sym = m.at("norm_sym").get<double>();
      doc.measures.norm_sym_squared = m.at("norm_sym_squared").get<double>();
      doc.measures.e2 = m.at("E2").get<double>();
      doc.measures.q2 = m.at("Q2").get<double>();
      doc.measures.m2 = m.at("M2").get<double>();
    }
    for (ContributionKind k :
         {ContributionKind::skewness, ContributionKind::quasi_skewness, ContributionKind::heterogeneity}) {
      const std::string key(to_string(k));
      if (!j.at("arrays").contains(key)) continue;
      const json& a = j.at("arrays").at(key);
      doc.arrays.push_back({k, a.at("degenerate").get<bool>(), a.at("measure").get<double>(),
                            matrix_from_json(a.at("percent"), "arrays." + key)});
    }
    doc.odds_input = matrix_from_json(j.at("odds_ratios").at("input"), "odds_ratios.input");
    if (j.at("odds_ratios").contains("QS")) {
      doc.odds_qs = matrix_from_json(j.at("odds_ratios").at("QS"), "odds_ratios.QS");
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invariant_violation, std::string("malformed report: ") + e.what());
  }
}

inline std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Canonical text: sorted keys, two-space indent, 17 significant digits.
inline void write_canonical(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(key).dump() << ": ";
        write_canonical(os, value, indent + 2);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line so matrices read row by row.
      bool scalars = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      if (scalars) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write_canonical(os, j[k], indent + 2);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        write_canonical(os, j[k], indent + 2);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

inline std::string dump_canonical(const json& j) {
  std::ostringstream os;
  write_canonical(os, j);
  os << "\n";
  return os.str();
}

}  // namespace json_io

inline std::string serialize_report(const ReportDocument& doc) { return json_io::dump_canonical(json_io::to_json(doc)); }

inline ReportDocument parse_report(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invariant_violation, std::string("report is not valid JSON: ") + e.what());
  }
  return json_io::from_json(j);
}

namespace csv_out {

inline std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

/// Writes a matrix with the input's label layout.
template <typename Format>
void write_matrix(std::ostream& os, const Matrix& m, const std::vector<std::string>& row_labels,
                  const std::vector<std::string>& col_labels, Format format) {
  const bool rows_labelled = static_cast<Index>(row_labels.size()) == m.rows();
  const bool cols_labelled = static_cast<Index>(col_labels.size()) == m.cols();
  if (cols_labelled) {
    if (rows_labelled) os << ",";
    for (Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << col_labels[static_cast<std::size_t>(j)];
    os << "\n";
  }
  for (Index i = 0; i < m.rows(); ++i) {
    if (rows_labelled) os << row_labels[static_cast<std::size_t>(i)] << ",";
    for (Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format(m(i, j));
    os << "\n";
  }
}

/// One CSV per table, array and odds-ratio matrix under `dir`.
inline std::vector<std::filesystem::path> emit_tables(const ReportDocument& doc, const std::filesystem::path& dir,
                                                      int percent_decimals) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto& rl = doc.input.row_labels;
  const auto& cl = doc.input.col_labels;
  auto write = [&](const std::string& name, const Matrix& m, auto format, bool labelled) {
    auto path = dir / (name + ".csv");
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    static const std::vector<std::string> none;
    write_matrix(out, m, labelled ? rl : none, labelled ? cl : none, format);
    written.push_back(path);
  };
  auto tables6 = [](double v) { return sig6(v); };
  write("proportions", doc.proportions.matrix(), tables6, true);
  for (const auto& [name, table] : doc.tables) write(name, table.matrix(), tables6, true);
  for (const auto& a : doc.arrays) {
    write(std::string(to_string(a.kind)) + "_array", a.percent,
          [percent_decimals](double v) { return fixed(v, percent_decimals); }, true);
  }
  write("odds_ratios_input", doc.odds_input, tables6, false);
  if (doc.odds_qs) write("odds_ratios_QS", *doc.odds_qs, tables6, false);
  return written;
}

}  // namespace csv_out

}  // namespace aitchison
