#pragma once

// Command bodies for the `aitchison` tool, kept apart from argument parsing
// so tests can drive them directly.
//
// Exit codes: 0 success; 1 verification failure or internal error;
// 2 input error (unreadable file, malformed CSV, rejected zero cell, bad flag value).

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aitchison/report.hpp"
#include "aitchison/verify.hpp"

namespace aitchison::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

struct Diagnostics {
  std::ostream& stream;
  bool color = false;

  void error(const std::string& message) const {
    std::string line = message;
    for (char& c : line)
      if (c == '\n') c = ' ';
    if (color) {
      stream << "\033[31merror:\033[0m " << line << "\n";
    } else {
      stream << "error: " << line << "\n";
    }
  }
};

struct DecomposeOptions {
  std::string input;
  std::string smoothing = "reject";
  std::optional<std::string> output;
  std::optional<std::string> emit_tables;
  int percent_decimals = 2;
};

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
    case Errc::malformed_csv:
    case Errc::empty_input:
    case Errc::zero_cell_rejected:
    case Errc::invalid_dims:
    case Errc::invalid_params:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

inline std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Human-readable measures block, three decimals.
inline std::string render_summary(const ReportDocument& doc) {
  std::string s;
  s += "table      " + to_string(doc.input.dims) + ", total count " + std::to_string(doc.input.total_count) + "\n";
  s += "norm       " + fixed3(doc.measures.norm) + " (squared " + fixed3(doc.measures.norm_squared) + ")\n";
  s += "deviance   " + fixed3(doc.measures.deviance) + "\n";
  if (doc.square) {
    s += "norm_sym   " + fixed3(doc.measures.norm_sym) + " (squared " + fixed3(doc.measures.norm_sym_squared) + ")\n";
    s += "E2         " + fixed3(doc.measures.e2) + "\n";
    s += "Q2         " + fixed3(doc.measures.q2) + "\n";
    s += "M2         " + fixed3(doc.measures.m2) + "\n";
    for (const auto& a : doc.arrays)
      if (a.degenerate) s += std::string(to_string(a.kind)) + " array is degenerate (measure is zero)\n";
  }
  return s;
}

/// Builds the report for a counts CSV and writes it.  JSON goes to
/// `opts.output` when given (with the summary on `out`), otherwise to `out`.
inline int run_decompose(const DecomposeOptions& opts, std::ostream& out, const Diagnostics& diag) {
  try {
    if (opts.percent_decimals < 0 || opts.percent_decimals > 12) {
      throw Error(Errc::invalid_params, "--percent-decimals must be within 0..12");
    }
    SmoothingPolicy policy = SmoothingPolicy::parse(opts.smoothing);
    CountTable counts = parse_counts_csv(opts.input);
    ProbabilityTable p = to_probability(counts, policy);
    ReportDocument doc = build_report(
        p, ReportDocument::Input{opts.input, counts.dims, counts.total(), counts.row_labels, counts.col_labels},
        policy);
    std::string text = serialize_report(doc);
    if (opts.output) {
      std::ofstream file(*opts.output, std::ios::binary);
      if (!file || !(file << text)) throw Error(Errc::io_error, "cannot write '" + *opts.output + "'");
      out << render_summary(doc);
    } else {
      out << text;
    }
    if (opts.emit_tables) csv_out::emit_tables(doc, *opts.emit_tables, opts.percent_decimals);
    return kExitOk;
  } catch (const Error& e) {
    diag.error(e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    diag.error(e.what());
    return kExitFailure;
  }
}

/// "2..6", "4" or "2,3,5".
inline std::vector<Index> parse_sizes(const std::string& text) {
  auto to_index = [&](const std::string& s) {
    auto v = detail::parse_int(detail::trim(s));
    if (!v || *v < 2 || *v > 64) throw Error(Errc::invalid_params, "bad size '" + s + "' in --sizes");
    return static_cast<Index>(*v);
  };
  std::vector<Index> sizes;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    Index lo = to_index(text.substr(0, dots));
    Index hi = to_index(text.substr(dots + 2));
    if (hi < lo) throw Error(Errc::invalid_params, "empty --sizes range '" + text + "'");
    for (Index n = lo; n <= hi; ++n) sizes.push_back(n);
    return sizes;
  }
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) sizes.push_back(to_index(item));
  if (sizes.empty()) throw Error(Errc::invalid_params, "--sizes is empty");
  return sizes;
}

/// Runs the verification suite, one line per check; 0 iff every check passes.
inline int run_verify(const VerifyOptions& opts, std::ostream& out, const Diagnostics& diag) {
  try {
    if (opts.trials < 1) throw Error(Errc::invalid_params, "--trials must be >= 1");
    bool all = true;
    for (const CheckResult& r : run_verification(opts)) {
      out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.detail << "\n";
      all = all && r.passed;
    }
    out << (all ? "all checks passed\n" : "verification FAILED\n");
    return all ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    diag.error(e.what());
    return exit_code_for(e.code());
  }
}

}  // namespace aitchison::cli
