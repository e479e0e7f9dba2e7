#pragma once

// Probability tables as elements of the simplex, with the Aitchison vector
// space operations and metric.  Every table is stored closed (unit sum) and
// every product of probabilities is evaluated in log space.

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "aitchison/error.hpp"

namespace aitchison {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kClrSumTolerance = 1e-9;

struct Dims {
  Index rows = 0;
  Index cols = 0;

  bool square() const noexcept { return rows == cols; }
  Index cells() const noexcept { return rows * cols; }
  friend bool operator==(const Dims&, const Dims&) = default;

  /// Throws InvalidDims unless both extents are at least 2.
  static Dims checked(Index rows, Index cols) {
    if (rows < 2 || cols < 2) {
      throw Error(Errc::invalid_dims, "table must be at least 2x2, got " + std::to_string(rows) +
                                          "x" + std::to_string(cols));
    }
    return Dims{rows, cols};
  }
};

inline std::string to_string(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

namespace detail {

inline void require_same_dims(Dims a, Dims b, const char* op) {
  if (a != b) {
    throw Error(Errc::dim_mismatch,
                std::string(op) + ": " + to_string(a) + " vs " + to_string(b));
  }
}

inline void require_square(Dims d, const char* op) {
  if (!d.square()) {
    throw Error(Errc::not_square, std::string(op) + " needs a square table, got " + to_string(d));
  }
}

}  // namespace detail

/// Geometric mean of a positive sequence, as exp(mean(log x)).
inline double geometric_mean(std::span<const double> values) {
  double acc = 0.0;
  for (double v : values) acc += std::log(v);
  return std::exp(acc / static_cast<double>(values.size()));
}

/// Positive real table with unit sum.  Only reachable through closure or
/// validation, so every instance satisfies the simplex invariants.
class ProbabilityTable {
 public:
  /// Normalises a strictly positive matrix to unit sum.
  static ProbabilityTable closure(const Matrix& raw) {
    Dims d = Dims::checked(raw.rows(), raw.cols());
    for (Index j = 0; j < raw.cols(); ++j) {
      for (Index i = 0; i < raw.rows(); ++i) {
        double v = raw(i, j);
        if (!(v > 0.0) || !std::isfinite(v)) {
          throw Error(Errc::non_positive_entry,
                      "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") is not a finite positive number; apply a smoothing policy first");
        }
      }
    }
    Matrix probs = raw / raw.sum();
    return ProbabilityTable(d, std::move(probs));
  }

  /// Closure of exp(logs).  The maximum is subtracted first so that very
  /// negative log values do not underflow as a block.
  static ProbabilityTable from_logs(const Matrix& logs) {
    Dims d = Dims::checked(logs.rows(), logs.cols());
    if (!logs.allFinite()) {
      throw Error(Errc::non_positive_entry, "non-finite log value");
    }
    Matrix shifted = (logs.array() - logs.maxCoeff()).exp().matrix();
    return ProbabilityTable(d, shifted / shifted.sum());
  }

  /// Accepts an already closed table without renormalising it.  Used when
  /// reading serialized tables, where re-closure would perturb the last bits.
  static ProbabilityTable validated(const Matrix& probs) {
    Dims d = Dims::checked(probs.rows(), probs.cols());
    if (!probs.allFinite() || (probs.array() <= 0.0).any()) {
      throw Error(Errc::non_positive_entry, "table has a non-positive or non-finite entry");
    }
    if (std::abs(probs.sum() - 1.0) > kSumTolerance) {
      throw Error(Errc::invariant_violation, "table does not sum to 1");
    }
    return ProbabilityTable(d, probs);
  }

  static ProbabilityTable uniform(Dims d) {
    d = Dims::checked(d.rows, d.cols);
    return ProbabilityTable(d, Matrix::Constant(d.rows, d.cols, 1.0 / static_cast<double>(d.cells())));
  }

  Dims dims() const noexcept { return dims_; }
  Index rows() const noexcept { return dims_.rows; }
  Index cols() const noexcept { return dims_.cols; }
  bool square() const noexcept { return dims_.square(); }
  double operator()(Index i, Index j) const { return probs_(i, j); }
  const Matrix& matrix() const noexcept { return probs_; }
  Matrix logs() const { return probs_.array().log().matrix(); }

 private:
  ProbabilityTable(Dims d, Matrix probs) : dims_(d), probs_(std::move(probs)) {
    if (std::abs(probs_.sum() - 1.0) > kSumTolerance) {
      throw Error(Errc::invariant_violation, "closure did not produce a unit sum");
    }
  }

  Dims dims_;
  Matrix probs_;
};

/// Real table with zero total: the clr image of a probability table.
class ClrTable {
 public:
  explicit ClrTable(Matrix values) : values_(std::move(values)) {
    Dims::checked(values_.rows(), values_.cols());
    double tol = kClrSumTolerance * static_cast<double>(values_.size());
    if (!values_.allFinite() || std::abs(values_.sum()) > tol) {
      throw Error(Errc::invariant_violation, "clr table entries must be finite and sum to zero");
    }
  }

  /// Subtracts the grand mean, producing a valid clr table from any matrix.
  static ClrTable centered(const Matrix& values) {
    return ClrTable((values.array() - values.mean()).matrix());
  }

  static ClrTable zero(Dims d) { return ClrTable(Matrix::Zero(d.rows, d.cols)); }

  Dims dims() const noexcept { return Dims{values_.rows(), values_.cols()}; }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix& matrix() const noexcept { return values_; }

  double dot(const ClrTable& other) const {
    detail::require_same_dims(dims(), other.dims(), "clr dot");
    return values_.cwiseProduct(other.values_).sum();
  }
  double squared_norm() const { return values_.squaredNorm(); }

  friend ClrTable operator+(const ClrTable& a, const ClrTable& b) {
    detail::require_same_dims(a.dims(), b.dims(), "clr sum");
    return ClrTable(a.values_ + b.values_);
  }
  friend ClrTable operator-(const ClrTable& a, const ClrTable& b) {
    detail::require_same_dims(a.dims(), b.dims(), "clr difference");
    return ClrTable(a.values_ - b.values_);
  }
  friend ClrTable operator*(double alpha, const ClrTable& a) { return ClrTable(alpha * a.values_); }

 private:
  Matrix values_;
};

inline ProbabilityTable closure(const Matrix& raw) { return ProbabilityTable::closure(raw); }

inline ProbabilityTable uniform_table(Dims d) { return ProbabilityTable::uniform(d); }

/// P ⊕ Q: closure of the entrywise product.
inline ProbabilityTable perturb(const ProbabilityTable& p, const ProbabilityTable& q) {
  detail::require_same_dims(p.dims(), q.dims(), "perturb");
  return ProbabilityTable::from_logs(p.logs() + q.logs());
}

/// alpha ⊙ P: closure of the entrywise power.
inline ProbabilityTable power(double alpha, const ProbabilityTable& p) {
  if (!std::isfinite(alpha)) {
    throw Error(Errc::invalid_params, "powering scalar must be finite");
  }
  return ProbabilityTable::from_logs(alpha * p.logs());
}

/// P ⊖ Q = P ⊕ ((-1) ⊙ Q).
inline ProbabilityTable ominus(const ProbabilityTable& p, const ProbabilityTable& q) {
  detail::require_same_dims(p.dims(), q.dims(), "ominus");
  return perturb(p, power(-1.0, q));
}

inline ProbabilityTable transpose(const ProbabilityTable& p) {
  detail::require_square(p.dims(), "transpose");
  return ProbabilityTable::validated(p.matrix().transpose());
}

inline double geometric_mean(const ProbabilityTable& p) {
  return std::exp(p.logs().mean());
}

inline Vector row_geomeans(const ProbabilityTable& p) {
  return p.logs().rowwise().mean().array().exp().matrix();
}

inline Vector col_geomeans(const ProbabilityTable& p) {
  return p.logs().colwise().mean().transpose().array().exp().matrix();
}

/// Closed geometric margins, as displayed beside a table.
inline Vector row_geometric_margin(const ProbabilityTable& p) {
  Vector g = row_geomeans(p);
  return g / g.sum();
}

inline Vector col_geometric_margin(const ProbabilityTable& p) {
  Vector g = col_geomeans(p);
  return g / g.sum();
}

inline ClrTable clr(const ProbabilityTable& p) { return ClrTable::centered(p.logs()); }

inline ProbabilityTable clr_inverse(const ClrTable& c) {
  return ProbabilityTable::from_logs(c.matrix());
}

/// Centers the input first; closure absorbs any additive constant anyway.
inline ProbabilityTable clr_inverse(const Matrix& values) {
  return clr_inverse(ClrTable::centered(values));
}

inline double aitchison_inner(const ProbabilityTable& p, const ProbabilityTable& q) {
  detail::require_same_dims(p.dims(), q.dims(), "aitchison_inner");
  return clr(p).dot(clr(q));
}

inline double aitchison_squared_norm(const ProbabilityTable& p) { return clr(p).squared_norm(); }

inline double aitchison_norm(const ProbabilityTable& p) { return std::sqrt(aitchison_squared_norm(p)); }

inline double aitchison_distance(const ProbabilityTable& p, const ProbabilityTable& q) {
  detail::require_same_dims(p.dims(), q.dims(), "aitchison_distance");
  return aitchison_norm(ominus(p, q));
}

/// (1-lambda) ⊙ P ⊕ lambda ⊙ Q, a straight line in clr coordinates.
inline ProbabilityTable e_geodesic(const ProbabilityTable& p, const ProbabilityTable& q, double lambda) {
  detail::require_same_dims(p.dims(), q.dims(), "e_geodesic");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(Errc::lambda_out_of_range, "lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  return perturb(power(1.0 - lambda, p), power(lambda, q));
}

}  // namespace aitchison
