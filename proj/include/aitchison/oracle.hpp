#pragma once

// Independent numerical oracle for the closed-form projections.
//
// Subspaces are described by elementary clr-space generators (indicator
// tables and 2x2 local contrasts) that never touch the projection formulas.
// Their dimension is measured by Gram-Schmidt rank, and orthogonal projection
// onto the resulting orthonormal basis gives a second route to every
// projection in decomposition.hpp.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "aitchison/decomposition.hpp"

namespace aitchison::oracle {

/// Seedable generator threaded through every stochastic operation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Matrix normal_matrix(Index rows, Index cols, Rng& rng) {
  Matrix z(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) z(i, j) = rng.normal();
  return z;
}

/// Closure of exp(z) with standard normal z; deterministic in the seed.
inline ProbabilityTable random_table(Index rows, Index cols, Rng& rng) {
  Dims::checked(rows, cols);
  return ProbabilityTable::from_logs(normal_matrix(rows, cols, rng));
}

inline ProbabilityTable random_table(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return random_table(rows, cols, rng);
}

/// Parameters of the multiplicative quasi-symmetry representation
/// p_ij ∝ alpha_i beta_j psi_ij with psi symmetric.
struct QsGeneratorParams {
  Vector alpha;
  Vector beta;
  Matrix psi;

  void validate() const {
    const Index n = alpha.size();
    if (n < 2 || beta.size() != n || psi.rows() != n || psi.cols() != n) {
      throw Error(Errc::invalid_params, "alpha, beta and psi must share one size >= 2");
    }
    auto positive = [](const auto& m) { return m.allFinite() && (m.array() > 0.0).all(); };
    if (!positive(alpha) || !positive(beta) || !positive(psi)) {
      throw Error(Errc::invalid_params, "generator parameters must be finite and positive");
    }
    if (psi != psi.transpose()) {
      throw Error(Errc::invalid_params, "psi must be exactly symmetric");
    }
  }
};

inline QsGeneratorParams random_qs_params(Index n, Rng& rng) {
  QsGeneratorParams params;
  params.alpha = normal_matrix(n, 1, rng).array().exp().matrix();
  params.beta = normal_matrix(n, 1, rng).array().exp().matrix();
  Matrix z = normal_matrix(n, n, rng);
  Matrix sym = 0.5 * (z + z.transpose());
  params.psi = sym.array().exp().matrix();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) params.psi(i, j) = params.psi(j, i);
  return params;
}

inline ProbabilityTable qs_generate(const QsGeneratorParams& params) {
  params.validate();
  const Index n = params.alpha.size();
  Matrix logs(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      logs(i, j) = std::log(params.alpha(i)) + std::log(params.beta(j)) + std::log(params.psi(i, j));
  return ProbabilityTable::from_logs(logs);
}

/// Dimension of each subspace of the I*I simplex.
inline Index expected_dimension(Subspace kind, Index n) {
  switch (kind) {
    case Subspace::ind: return 2 * n - 2;
    case Subspace::int_: return (n - 1) * (n - 1);
    case Subspace::sym: return (n - 1) * (n + 2) / 2;
    case Subspace::skew: return n * (n - 1) / 2;
    case Subspace::syind: return n - 1;
    case Subspace::skind: return n - 1;
    case Subspace::syint: return (n - 1) * (n + 2) / 2 - (n - 1);
    case Subspace::skint: return (n - 1) * (n - 2) / 2;
    case Subspace::qs: return (n - 1) * (n + 4) / 2;
    case Subspace::gmh: return n * (n - 1);
  }
  throw Error(Errc::unknown_kind, "unknown subspace");
}

namespace detail {

inline Matrix unit(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline Matrix row_indicator(Index n, Index k) {
  Matrix e = Matrix::Zero(n, n);
  e.row(k).setOnes();
  return e;
}

inline Matrix col_indicator(Index n, Index k) {
  Matrix e = Matrix::Zero(n, n);
  e.col(k).setOnes();
  return e;
}

/// +1 on (i,j),(i+1,j+1); -1 on (i,j+1),(i+1,j): the log of a local odds ratio.
inline Matrix local_contrast(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  e(i + 1, j + 1) = 1.0;
  e(i, j + 1) = -1.0;
  e(i + 1, j) = -1.0;
  return e;
}

inline Matrix centered(const Matrix& m) { return (m.array() - m.mean()).matrix(); }

}  // namespace detail

/// Elementary spanning set (not orthonormal, possibly dependent) of the clr
/// image of a subspace of the I*I simplex.
inline std::vector<Matrix> subspace_generators(Subspace kind, Index n) {
  using namespace detail;
  std::vector<Matrix> g;
  auto add_ind = [&] {
    for (Index k = 0; k < n; ++k) g.push_back(centered(row_indicator(n, k)));
    for (Index k = 0; k < n; ++k) g.push_back(centered(col_indicator(n, k)));
  };
  auto add_int = [&] {
    for (Index i = 0; i + 1 < n; ++i)
      for (Index j = 0; j + 1 < n; ++j) g.push_back(local_contrast(n, i, j));
  };
  auto add_syind = [&] {
    for (Index k = 0; k < n; ++k) g.push_back(centered(row_indicator(n, k) + col_indicator(n, k)));
  };
  auto add_syint = [&] {
    for (Index i = 0; i + 1 < n; ++i)
      for (Index j = i; j + 1 < n; ++j) g.push_back(local_contrast(n, i, j) + local_contrast(n, j, i));
  };
  switch (kind) {
    case Subspace::ind:
      add_ind();
      break;
    case Subspace::int_:
      add_int();
      break;
    case Subspace::sym:
      for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) g.push_back(centered(unit(n, i, j) + unit(n, j, i)));
      break;
    case Subspace::skew:
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) g.push_back(unit(n, i, j) - unit(n, j, i));
      break;
    case Subspace::syind:
      add_syind();
      break;
    case Subspace::skind:
      for (Index k = 0; k < n; ++k) g.push_back(row_indicator(n, k) - col_indicator(n, k));
      break;
    case Subspace::syint:
      add_syint();
      break;
    case Subspace::skint:
      for (Index i = 0; i + 1 < n; ++i)
        for (Index j = i + 1; j + 1 < n; ++j) g.push_back(local_contrast(n, i, j) - local_contrast(n, j, i));
      break;
    case Subspace::qs:
      add_ind();
      add_syint();
      break;
    case Subspace::gmh:
      add_syind();
      add_int();
      break;
  }
  return g;
}

inline constexpr double kRankTolerance = 1e-9;

/// Modified Gram-Schmidt with one re-orthogonalisation pass.  Vectors whose
/// residual norm falls below `tol` are dropped, so the output size is the rank.
inline std::vector<Matrix> gram_schmidt(const std::vector<Matrix>& vectors, double tol = kRankTolerance) {
  std::vector<Matrix> basis;
  for (const Matrix& v : vectors) {
    Matrix r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& b : basis) r -= r.cwiseProduct(b).sum() * b;
    double norm = r.norm();
    if (norm > tol) basis.push_back(r / norm);
  }
  return basis;
}

/// Orthonormal basis of the clr image of a subspace, as clr tables.
inline std::vector<ClrTable> subspace_basis(Subspace kind, Index n) {
  Dims::checked(n, n);
  std::vector<ClrTable> out;
  for (Matrix& b : gram_schmidt(subspace_generators(kind, n))) out.emplace_back(std::move(b));
  return out;
}

inline Vector basis_coefficients(const ClrTable& c, const std::vector<ClrTable>& basis) {
  Vector coef(static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) coef(static_cast<Index>(k)) = c.dot(basis[k]);
  return coef;
}

inline ClrTable combine(const Vector& coef, const std::vector<ClrTable>& basis, Dims d) {
  Matrix acc = Matrix::Zero(d.rows, d.cols);
  for (std::size_t k = 0; k < basis.size(); ++k) acc += coef(static_cast<Index>(k)) * basis[k].matrix();
  return ClrTable::centered(acc);
}

/// Projection of clr(P) on the orthonormal basis, mapped back to the simplex.
inline ProbabilityTable basis_projection(const ProbabilityTable& p, Subspace kind) {
  aitchison::detail::require_square(p.dims(), "basis_projection");
  auto basis = subspace_basis(kind, p.rows());
  ClrTable c = clr(p);
  return clr_inverse(combine(basis_coefficients(c, basis), basis, p.dims()));
}

/// A random member of the subspace: standard normal coefficients on its basis.
inline ProbabilityTable random_member(Subspace kind, Index n, Rng& rng) {
  auto basis = subspace_basis(kind, n);
  Vector coef = normal_matrix(static_cast<Index>(basis.size()), 1, rng);
  return clr_inverse(combine(coef, basis, Dims{n, n}));
}

/// True iff no random subspace member is closer to P than `candidate`.
/// Half of the trials are drawn near the candidate (at scales from 1e-4 to
/// 1), the rest anywhere in the subspace.  Trial t uses seed + t.
inline bool minimality_probe(const ProbabilityTable& p, const ProbabilityTable& candidate, Subspace kind,
                             int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::invalid_params, "trials must be >= 1");
  aitchison::detail::require_square(p.dims(), "minimality_probe");
  auto basis = subspace_basis(kind, p.rows());
  Vector centre = basis_coefficients(clr(candidate), basis);
  const double best = aitchison_distance(p, candidate);
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    Vector z = normal_matrix(centre.size(), 1, rng);
    Vector coef = (t % 2 == 0) ? Vector(centre + std::pow(10.0, rng.uniform(-4.0, 0.0)) * z) : Vector(z);
    ProbabilityTable q = clr_inverse(combine(coef, basis, p.dims()));
    if (best > aitchison_distance(p, q) + 1e-12) return false;
  }
  return true;
}

/// Probe for the closed-form projection of P.
inline bool minimality_probe(const ProbabilityTable& p, Subspace kind, int trials, std::uint64_t seed) {
  return minimality_probe(p, project(p, kind), kind, trials, seed);
}

}  // namespace aitchison::oracle
