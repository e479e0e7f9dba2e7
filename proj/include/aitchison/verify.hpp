#pragma once

// The self-verification suite behind `aitchison verify`: dimension ledger,
// oracle equivalence, minimality probes and the skewness decomposition
// identity, each reported as one pass/fail line.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aitchison/measures.hpp"
#include "aitchison/oracle.hpp"

namespace aitchison {

using Projector = std::function<ProbabilityTable(const ProbabilityTable&, Subspace)>;

struct VerifyOptions {
  std::vector<Index> sizes{2, 3, 4, 5, 6};
  int trials = 1000;
  std::uint64_t seed = 20240101;
  /// Projection under test; the closed forms unless replaced.
  Projector projector = [](const ProbabilityTable& p, Subspace s) { return project(p, s); };
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline double max_abs_diff(const ProbabilityTable& a, const ProbabilityTable& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  // Each table-based check uses at most this many tables per size; the
  // minimality probes use `trials` candidates on a handful of tables.
  const int tables = std::max(100, std::min(opts.trials, 1000));
  const int probe_tables = 5;

  for (Index n : opts.sizes) {
    Dims::checked(n, n);
    const std::string tag = " I=" + std::to_string(n);

    {
      CheckResult r{"dimension ledger" + tag, true, ""};
      Index sum_of_four = 0;
      for (Subspace s : kAllSubspaces) {
        auto rank = static_cast<Index>(oracle::subspace_basis(s, n).size());
        Index want = oracle::expected_dimension(s, n);
        r.detail += std::string(to_string(s)) + "=" + std::to_string(rank) + " ";
        if (rank != want) r.passed = false;
        if (s == Subspace::syind || s == Subspace::skind || s == Subspace::syint || s == Subspace::skint)
          sum_of_four += rank;
      }
      if (sum_of_four != n * n - 1) r.passed = false;
      r.detail += "(four parts sum to " + std::to_string(sum_of_four) + ")";
      results.push_back(r);
    }

    {
      CheckResult r{"oracle equivalence" + tag, true, ""};
      double worst = 0.0;
      for (int t = 0; t < tables; ++t) {
        auto p = oracle::random_table(n, n, opts.seed + 7919u * static_cast<std::uint64_t>(n) + t);
        for (Subspace s : kAllSubspaces) {
          worst = std::max(worst, detail::max_abs_diff(opts.projector(p, s), oracle::basis_projection(p, s)));
        }
      }
      r.passed = worst <= 1e-9;
      r.detail = "max entry diff " + detail::fmt(worst) + " over " + std::to_string(tables) + " tables";
      results.push_back(r);
    }

    {
      CheckResult r{"minimality" + tag, true, ""};
      int failures = 0;
      for (int t = 0; t < probe_tables; ++t) {
        auto p = oracle::random_table(n, n, opts.seed + 104729u * static_cast<std::uint64_t>(n) + t);
        for (Subspace s : {Subspace::qs, Subspace::gmh}) {
          if (!oracle::minimality_probe(p, opts.projector(p, s), s, opts.trials, opts.seed + t)) ++failures;
        }
      }
      r.passed = failures == 0;
      r.detail = std::to_string(failures) + " failing probes of " + std::to_string(2 * probe_tables) + " (" +
                 std::to_string(opts.trials) + " candidates each)";
      results.push_back(r);
    }

    {
      CheckResult r{"E2 = Q2 + M2" + tag, true, ""};
      double worst = 0.0;
      for (int t = 0; t < tables; ++t) {
        auto p = oracle::random_table(n, n, opts.seed + 15485863u * static_cast<std::uint64_t>(n) + t);
        double e2 = aitchison_squared_norm(opts.projector(p, Subspace::skew));
        double q2 = aitchison_squared_norm(opts.projector(p, Subspace::skint));
        double m2 = aitchison_squared_norm(opts.projector(p, Subspace::skind));
        worst = std::max(worst, std::abs(e2 - q2 - m2));
      }
      r.passed = worst <= 1e-10;
      r.detail = "max |E2 - Q2 - M2| " + detail::fmt(worst);
      results.push_back(r);
    }
  }
  return results;
}

}  // namespace aitchison
