#pragma once

// Orthogonal projections of probability tables: geometric marginals,
// independence/interaction, symmetry/skew-symmetry, the four-part
// decomposition of square tables, quasi-symmetry (QS) and geometric marginal
// homogeneity (GMH).
//
// Each projection exists twice: as a composition of perturbation, powering
// and transposition (the default entry points), and as a direct cell formula
// (namespace cell_formula).  The tests require the two to agree.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "aitchison/table.hpp"

namespace aitchison {

/// The linear subspaces of the simplex a square table can be projected on.
enum class Subspace {
  ind,
  int_,
  sym,
  skew,
  syind,
  skind,
  syint,
  skint,
  qs,
  gmh,
};

inline constexpr std::array<Subspace, 10> kAllSubspaces = {
    Subspace::ind,   Subspace::int_,  Subspace::sym,   Subspace::skew, Subspace::syind,
    Subspace::skind, Subspace::syint, Subspace::skint, Subspace::qs,   Subspace::gmh,
};

constexpr std::string_view to_string(Subspace s) noexcept {
  switch (s) {
    case Subspace::ind: return "ind";
    case Subspace::int_: return "int";
    case Subspace::sym: return "sym";
    case Subspace::skew: return "skew";
    case Subspace::syind: return "syind";
    case Subspace::skind: return "skind";
    case Subspace::syint: return "syint";
    case Subspace::skint: return "skint";
    case Subspace::qs: return "QS";
    case Subspace::gmh: return "GMH";
  }
  return "?";
}

/// Inverse of to_string; throws UnknownKind.
inline Subspace parse_subspace(std::string_view name) {
  for (Subspace s : kAllSubspaces) {
    if (to_string(s) == name) return s;
  }
  throw Error(Errc::unknown_kind, "unknown subspace '" + std::string(name) + "'");
}

// Geometric marginals and independence ------------------------------------

inline ProbabilityTable row_projection(const ProbabilityTable& p) {
  Vector row_logs = p.logs().rowwise().mean();
  return ProbabilityTable::from_logs(row_logs.replicate(1, p.cols()));
}

inline ProbabilityTable col_projection(const ProbabilityTable& p) {
  Eigen::RowVectorXd col_logs = p.logs().colwise().mean();
  return ProbabilityTable::from_logs(col_logs.replicate(p.rows(), 1));
}

inline ProbabilityTable independent_part(const ProbabilityTable& p) {
  return perturb(row_projection(p), col_projection(p));
}

inline ProbabilityTable interaction_part(const ProbabilityTable& p) {
  return ominus(p, independent_part(p));
}

// Symmetry ------------------------------------------------------------------

/// 0.5 ⊙ (P ⊕ T(P)); cells proportional to sqrt(p_ij p_ji).
inline ProbabilityTable symmetric_part(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "symmetric_part");
  return power(0.5, perturb(p, transpose(p)));
}

/// 0.5 ⊙ (P ⊖ T(P)); cells proportional to sqrt(p_ij / p_ji).
inline ProbabilityTable skew_part(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "skew_part");
  return power(0.5, ominus(p, transpose(p)));
}

// Quasi-symmetry and geometric marginal homogeneity --------------------------

/// Closest quasi-symmetric table: P_ind ⊕ 0.5 ⊙ (P_int ⊕ T(P_int)).
inline ProbabilityTable qs_projection(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "qs_projection");
  ProbabilityTable interaction = interaction_part(p);
  return perturb(independent_part(p), symmetric_part(interaction));
}

inline ProbabilityTable skint_part(const ProbabilityTable& p) {
  return ominus(p, qs_projection(p));
}

/// Closest geometric-marginal-homogeneous table: 0.5 ⊙ (P_ind ⊕ T(P_ind)) ⊕ P_int.
inline ProbabilityTable gmh_projection(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "gmh_projection");
  return perturb(symmetric_part(independent_part(p)), interaction_part(p));
}

inline ProbabilityTable skind_part(const ProbabilityTable& p) {
  return ominus(p, gmh_projection(p));
}

/// The four mutually orthogonal parts of a square table and their sums.
class DecompositionBundle {
 public:
  explicit DecompositionBundle(const ProbabilityTable& source)
      : source_(checked_square(source)),
        ind_(independent_part(source)),
        int_(interaction_part(source)),
        syind_(symmetric_part(ind_)),
        skind_(skew_part(ind_)),
        syint_(symmetric_part(int_)),
        skint_(skew_part(int_)) {}

  const ProbabilityTable& source() const noexcept { return source_; }
  const ProbabilityTable& syind() const noexcept { return syind_; }
  const ProbabilityTable& skind() const noexcept { return skind_; }
  const ProbabilityTable& syint() const noexcept { return syint_; }
  const ProbabilityTable& skint() const noexcept { return skint_; }

  const ProbabilityTable& ind() const noexcept { return ind_; }
  const ProbabilityTable& interaction() const noexcept { return int_; }
  ProbabilityTable sym() const { return perturb(syind_, syint_); }
  ProbabilityTable skew() const { return perturb(skind_, skint_); }
  ProbabilityTable qs() const { return perturb(ind_, syint_); }
  ProbabilityTable gmh() const { return perturb(syind_, int_); }

  /// Component of the source in the given subspace.
  ProbabilityTable part(Subspace s) const {
    switch (s) {
      case Subspace::ind: return ind_;
      case Subspace::int_: return int_;
      case Subspace::sym: return sym();
      case Subspace::skew: return skew();
      case Subspace::syind: return syind_;
      case Subspace::skind: return skind_;
      case Subspace::syint: return syint_;
      case Subspace::skint: return skint_;
      case Subspace::qs: return qs();
      case Subspace::gmh: return gmh();
    }
    throw Error(Errc::unknown_kind, "unknown subspace");
  }

 private:
  static const ProbabilityTable& checked_square(const ProbabilityTable& p) {
    detail::require_square(p.dims(), "four_part");
    return p;
  }

  ProbabilityTable source_;
  ProbabilityTable ind_;
  ProbabilityTable int_;
  ProbabilityTable syind_;
  ProbabilityTable skind_;
  ProbabilityTable syint_;
  ProbabilityTable skint_;
};

inline DecompositionBundle four_part(const ProbabilityTable& p) { return DecompositionBundle(p); }

/// Orthogonal projection of P onto a subspace, by the closed-form routes.
inline ProbabilityTable project(const ProbabilityTable& p, Subspace s) {
  switch (s) {
    case Subspace::ind: return independent_part(p);
    case Subspace::int_: return interaction_part(p);
    case Subspace::sym: return symmetric_part(p);
    case Subspace::skew: return skew_part(p);
    case Subspace::syind: return symmetric_part(independent_part(p));
    case Subspace::skind: return skind_part(p);
    case Subspace::syint: return symmetric_part(interaction_part(p));
    case Subspace::skint: return skint_part(p);
    case Subspace::qs: return qs_projection(p);
    case Subspace::gmh: return gmh_projection(p);
  }
  throw Error(Errc::unknown_kind, "unknown subspace");
}

namespace cell_formula {

// Direct per-cell expressions, evaluated on log probabilities.  lr_i and lc_j
// are the logs of the row and column geometric means.

inline ProbabilityTable independent(const ProbabilityTable& p) {
  // log p_ij^ind = (1/IJ) sum_k sum_l (log p_kj + log p_il) = lc_j + lr_i
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Eigen::RowVectorXd lc = logs.colwise().mean();
  Matrix out(p.rows(), p.cols());
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = 0; j < p.cols(); ++j) out(i, j) = lr(i) + lc(j);
  return ProbabilityTable::from_logs(out);
}

inline ProbabilityTable interaction(const ProbabilityTable& p) {
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Eigen::RowVectorXd lc = logs.colwise().mean();
  Matrix out(p.rows(), p.cols());
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = 0; j < p.cols(); ++j) out(i, j) = logs(i, j) - lr(i) - lc(j);
  return ProbabilityTable::from_logs(out);
}

inline ProbabilityTable symmetric(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::symmetric");
  Matrix logs = p.logs();
  return ProbabilityTable::from_logs(0.5 * (logs + logs.transpose()));
}

inline ProbabilityTable skew(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::skew");
  Matrix logs = p.logs();
  return ProbabilityTable::from_logs(0.5 * (logs - logs.transpose()));
}

inline ProbabilityTable quasi_symmetric(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::quasi_symmetric");
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Vector lc = logs.colwise().mean().transpose();
  const Index n = p.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out(i, j) = 0.5 * (logs(i, j) + logs(j, i) + lr(i) + lc(j) - lr(j) - lc(i));
  return ProbabilityTable::from_logs(out);
}

inline ProbabilityTable skew_interaction(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::skew_interaction");
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Vector lc = logs.colwise().mean().transpose();
  const Index n = p.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out(i, j) = 0.5 * (logs(i, j) - logs(j, i) + lr(j) + lc(i) - lr(i) - lc(j));
  return ProbabilityTable::from_logs(out);
}

inline ProbabilityTable marginal_homogeneous(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::marginal_homogeneous");
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Vector lc = logs.colwise().mean().transpose();
  const Index n = p.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out(i, j) = logs(i, j) + 0.5 * (lr(j) + lc(i) - lr(i) - lc(j));
  return ProbabilityTable::from_logs(out);
}

inline ProbabilityTable skew_independent(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "cell_formula::skew_independent");
  Matrix logs = p.logs();
  Vector lr = logs.rowwise().mean();
  Vector lc = logs.colwise().mean().transpose();
  const Index n = p.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = 0.5 * (lr(i) + lc(j) - lr(j) - lc(i));
  return ProbabilityTable::from_logs(out);
}

}  // namespace cell_formula

// Local odds ratios -----------------------------------------------------------

/// (I-1)x(J-1) matrix of local odds ratios theta_ij.
class OddsRatioMatrix {
 public:
  explicit OddsRatioMatrix(Matrix values) : values_(std::move(values)) {
    if (!values_.allFinite() || (values_.array() <= 0.0).any()) {
      throw Error(Errc::invariant_violation, "odds ratios must be finite and positive");
    }
  }

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix& matrix() const noexcept { return values_; }

 private:
  Matrix values_;
};

inline Matrix log_local_odds_ratios(const ProbabilityTable& p) {
  Matrix logs = p.logs();
  const Index r = p.rows() - 1;
  const Index c = p.cols() - 1;
  return logs.topLeftCorner(r, c) + logs.bottomRightCorner(r, c) - logs.topRightCorner(r, c) -
         logs.bottomLeftCorner(r, c);
}

inline OddsRatioMatrix local_odds_ratios(const ProbabilityTable& p) {
  return OddsRatioMatrix(log_local_odds_ratios(p).array().exp().matrix());
}

/// Largest |log theta_ij - log theta_ji| over the local odds ratios.
inline double odds_ratio_asymmetry(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "odds_ratio_asymmetry");
  Matrix lt = log_local_odds_ratios(p);
  return (lt - lt.transpose()).cwiseAbs().maxCoeff();
}

inline bool is_quasi_symmetric(const ProbabilityTable& p, double tol) {
  if (!(tol >= 0.0)) throw Error(Errc::invalid_params, "tolerance must be nonnegative");
  return odds_ratio_asymmetry(p) <= tol;
}

}  // namespace aitchison
