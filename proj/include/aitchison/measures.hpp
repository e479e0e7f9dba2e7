#pragma once

// Scalar departure measures (squared Aitchison norms of the skew parts) and
// the signed per-cell contribution arrays.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "aitchison/decomposition.hpp"

namespace aitchison {

/// Measures below this are treated as exactly zero when forming arrays.
inline constexpr double kDegenerateMeasure = 1e-14;

inline double simplicial_deviance(const ProbabilityTable& p) {
  return aitchison_squared_norm(interaction_part(p));
}

/// E^2(P) = ||P_skew||_A^2.
inline double simplicial_skewness(const ProbabilityTable& p) {
  return aitchison_squared_norm(skew_part(p));
}

/// Q^2(P) = ||P_skint||_A^2.
inline double simplicial_quasi_skewness(const ProbabilityTable& p) {
  return aitchison_squared_norm(skint_part(p));
}

/// M^2(P) = ||P_skind||_A^2.
inline double geometric_marginal_heterogeneity(const ProbabilityTable& p) {
  return aitchison_squared_norm(skind_part(p));
}

enum class ContributionKind { skewness, quasi_skewness, heterogeneity };

constexpr std::string_view to_string(ContributionKind k) noexcept {
  switch (k) {
    case ContributionKind::skewness: return "skewness";
    case ContributionKind::quasi_skewness: return "quasi_skewness";
    case ContributionKind::heterogeneity: return "heterogeneity";
  }
  return "?";
}

/// Signed fractions sgn(c_ij) c_ij^2 / measure of a skew part's clr entries.
/// Antisymmetric with a zero diagonal; all zero (and flagged) when the
/// measure is degenerate.
struct ContributionArray {
  ContributionKind kind = ContributionKind::skewness;
  Matrix values;
  double measure = 0.0;
  bool degenerate = false;

  double percent(Index i, Index j) const { return 100.0 * values(i, j); }
};

/// Builds the array from a skew-symmetric table (skew, skint or skind part).
inline ContributionArray contribution_array_of(const ProbabilityTable& skew_table, ContributionKind kind) {
  detail::require_square(skew_table.dims(), "contribution_array");
  ClrTable c = clr(skew_table);
  const Index n = skew_table.rows();
  ContributionArray out;
  out.kind = kind;
  out.measure = c.squared_norm();
  out.values = Matrix::Zero(n, n);
  out.degenerate = out.measure < kDegenerateMeasure;
  if (out.degenerate) return out;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double v = c(i, j);
      double share = std::copysign(v * v, v) / out.measure;
      out.values(i, j) = share;
      out.values(j, i) = -share;
    }
  }
  return out;
}

inline ContributionArray contribution_array(const DecompositionBundle& b, ContributionKind kind) {
  switch (kind) {
    case ContributionKind::skewness: return contribution_array_of(b.skew(), kind);
    case ContributionKind::quasi_skewness: return contribution_array_of(b.skint(), kind);
    case ContributionKind::heterogeneity: return contribution_array_of(b.skind(), kind);
  }
  throw Error(Errc::unknown_kind, "unknown contribution kind");
}

inline ContributionArray contribution_array(const ProbabilityTable& p, ContributionKind kind) {
  return contribution_array(four_part(p), kind);
}

struct MeasureReport {
  double norm = 0.0;          // ||P||_A
  double norm_squared = 0.0;  // ||P||_A^2
  double norm_sym = 0.0;
  double norm_sym_squared = 0.0;
  double deviance = 0.0;
  double e2 = 0.0;
  double q2 = 0.0;
  double m2 = 0.0;
};

inline MeasureReport measure_report(const DecompositionBundle& b) {
  MeasureReport r;
  r.norm_squared = aitchison_squared_norm(b.source());
  r.norm = std::sqrt(r.norm_squared);
  r.norm_sym_squared = aitchison_squared_norm(b.sym());
  r.norm_sym = std::sqrt(r.norm_sym_squared);
  r.deviance = aitchison_squared_norm(b.interaction());
  r.e2 = aitchison_squared_norm(b.skew());
  r.q2 = aitchison_squared_norm(b.skint());
  r.m2 = aitchison_squared_norm(b.skind());
  if (std::abs(r.e2 - r.q2 - r.m2) > 1e-10 * std::max(1.0, r.e2)) {
    throw Error(Errc::invariant_violation, "E^2 != Q^2 + M^2 (" + std::to_string(r.e2) + " vs " +
                                               std::to_string(r.q2 + r.m2) + ")");
  }
  return r;
}

inline MeasureReport measure_report(const ProbabilityTable& p) { return measure_report(four_part(p)); }

}  // namespace aitchison
