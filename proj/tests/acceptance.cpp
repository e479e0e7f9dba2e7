// Acceptance report: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion, exit 0 iff all pass
//   acceptance --only N   run criterion N alone

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aitchison/aitchison.hpp"
#include "stuart_golden.hpp"

using namespace aitchison;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double max_diff(const ProbabilityTable& a, const ProbabilityTable& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

ProbabilityTable random_symmetric(Index n, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Matrix z = oracle::normal_matrix(n, n, rng);
  return ProbabilityTable::from_logs(z + z.transpose());
}

// ---- golden reproduction -------------------------------------------------

Outcome norms() {
  auto t0 = std::chrono::steady_clock::now();
  auto r = measure_report(stuart::proportions());
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  // The printed figures are squared norms (their difference is E2), so they
  // are compared with ||.||_A^2; the plain norms are about 4.5.
  bool ok = std::abs(r.norm_squared - stuart::kNorm) <= 0.005 &&
            std::abs(r.norm_sym_squared - stuart::kNormSym) <= 0.005;
  std::string d = "||P||_A^2 = " + num(r.norm_squared) + ", ||P_sym||_A^2 = " + num(r.norm_sym_squared) +
                  " (norms " + num(r.norm) + ", " + num(r.norm_sym) + "); expected " + num(stuart::kNorm) + " and " +
                  num(stuart::kNormSym) + " +-0.005; runtime " + num(ms, 3) + " ms";
  return {ok, d};
}

Outcome measures() {
  auto t0 = std::chrono::steady_clock::now();
  auto r = measure_report(stuart::proportions());
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  double gap = std::abs(r.e2 - r.q2 - r.m2);
  bool ok = std::abs(r.e2 - stuart::kE2) <= 0.001 && std::abs(r.q2 - stuart::kQ2) <= 0.001 &&
            std::abs(r.m2 - stuart::kM2) <= 0.001 && gap <= 1e-10 && ms < 1000.0;
  return {ok, "E2 = " + num(r.e2) + ", Q2 = " + num(r.q2) + ", M2 = " + num(r.m2) + " (expected 0.219, 0.080, 0.139 "
              "+-0.001); |E2 - Q2 - M2| = " + sci(gap) + "; runtime " + num(ms, 3) + " ms"};
}

Outcome printed_tables() {
  auto b = four_part(stuart::proportions());
  struct Case {
    const stuart::PrintedTable& printed;
    const ProbabilityTable& computed;
  };
  const Case cases[] = {{stuart::kSymmetric, b.sym()},          {stuart::kSkew, b.skew()},
                        {stuart::kQuasiSymmetric, b.qs()},      {stuart::kSkewInteraction, b.skint()},
                        {stuart::kMarginalHomogeneous, b.gmh()}, {stuart::kSkewIndependent, b.skind()}};
  int checked = 0, failed = 0;
  std::ostringstream misses;
  auto check = [&](const char* table, const std::string& where, double got, double printed) {
    ++checked;
    if (std::abs(got - printed) <= 5e-5) return;
    ++failed;
    misses << "\n    " << table << " " << where << ": computed " << num(got, 5) << ", printed " << printed;
  };
  for (const Case& c : cases) {
    Vector rm = row_geometric_margin(c.computed), cm = col_geometric_margin(c.computed);
    for (int k = 0; k < 16; ++k)
      check(c.printed.name, "(" + std::to_string(k / 4 + 1) + "," + std::to_string(k % 4 + 1) + ")",
            c.computed(k / 4, k % 4), c.printed.cells[static_cast<std::size_t>(k)]);
    for (int k = 0; k < 4; ++k) {
      check(c.printed.name, "row margin " + std::to_string(k + 1), rm(k), c.printed.row_margin[static_cast<std::size_t>(k)]);
      check(c.printed.name, "col margin " + std::to_string(k + 1), cm(k), c.printed.col_margin[static_cast<std::size_t>(k)]);
    }
  }
  // The symmetric and skew margins as printed coincide with arithmetic row and column sums.
  Vector sym_rows = b.sym().matrix().rowwise().sum();
  Vector skew_rows = b.skew().matrix().rowwise().sum();
  double arith = std::max((sym_rows - Eigen::Map<const Vector>(stuart::kSymmetric.row_margin.data(), 4)).cwiseAbs().maxCoeff(),
                          (skew_rows - Eigen::Map<const Vector>(stuart::kSkew.row_margin.data(), 4)).cwiseAbs().maxCoeff());
  std::string d = std::to_string(checked - failed) + "/" + std::to_string(checked) +
                  " printed values within 5e-5; symmetric/skew printed margins match arithmetic row sums within " +
                  sci(arith) + misses.str();
  return {failed == 0, d};
}

Outcome odds_ratios() {
  auto theta = local_odds_ratios(qs_projection(stuart::proportions()));
  double worst = 0.0;
  std::ostringstream misses;
  for (int k = 0; k < 9; ++k) {
    double got = theta(k / 3, k % 3);
    double printed = stuart::kQsOddsRatios[static_cast<std::size_t>(k)];
    worst = std::max(worst, std::abs(got - printed));
    if (std::abs(got - printed) > 0.005)
      misses << "; (" << k / 3 + 1 << "," << k % 3 + 1 << ") computed " << num(got) << ", printed " << printed;
  }
  return {worst <= 0.005, "max |computed - printed| = " + num(worst, 4) + " (tolerance 0.005)" + misses.str()};
}

Outcome contribution_arrays() {
  auto b = four_part(stuart::proportions());
  const std::pair<ContributionKind, const std::array<double, 16>*> cases[] = {
      {ContributionKind::skewness, &stuart::kSkewnessArray},
      {ContributionKind::quasi_skewness, &stuart::kQuasiSkewnessArray},
      {ContributionKind::heterogeneity, &stuart::kHeterogeneityArray}};
  double worst = 0.0;
  for (const auto& [kind, printed] : cases) {
    auto a = contribution_array(b, kind);
    for (int k = 0; k < 16; ++k)
      worst = std::max(worst, std::abs(a.percent(k / 4, k % 4) - (*printed)[static_cast<std::size_t>(k)]));
  }
  auto sk = contribution_array(b, ContributionKind::skewness);
  auto qs = contribution_array(b, ContributionKind::quasi_skewness);
  auto he = contribution_array(b, ContributionKind::heterogeneity);
  return {worst <= 0.05, "max cell deviation " + num(worst, 3) + " points over 48 cells; skewness(1,4) = " +
                             num(sk.percent(0, 3), 4) + ", quasi-skewness(1,4) = " + num(qs.percent(0, 3), 4) +
                             ", (2,4) = " + num(qs.percent(1, 3), 4) + ", heterogeneity(1,4) = " +
                             num(he.percent(0, 3), 4) + ", (1,3) = " + num(he.percent(0, 2), 3)};
}

// ---- properties ----------------------------------------------------------

Outcome decomposition_suite() {
  const int tables = 1000;
  double recon = 0, orth = 0, pyth = 0, idem = 0, lin = 0;
  for (int k = 0; k < tables; ++k) {
    const Index n = 2 + k % 5;
    const auto seed = static_cast<std::uint64_t>(k);
    auto p = oracle::random_table(n, n, seed);
    auto b = four_part(p);
    const ProbabilityTable* parts[] = {&b.syind(), &b.skind(), &b.syint(), &b.skint()};
    recon = std::max(recon, max_diff(perturb(perturb(*parts[0], *parts[1]), perturb(*parts[2], *parts[3])), p));
    double sum = 0;
    for (int a = 0; a < 4; ++a) {
      sum += aitchison_squared_norm(*parts[a]);
      for (int c = a + 1; c < 4; ++c) orth = std::max(orth, std::abs(aitchison_inner(*parts[a], *parts[c])));
    }
    pyth = std::max(pyth, std::abs(aitchison_squared_norm(p) - sum));

    oracle::Rng rng(seed + 500000);
    auto q = oracle::random_table(n, n, rng);
    double alpha = rng.uniform(-3.0, 3.0);
    auto mix = perturb(power(alpha, p), q);
    for (Subspace s : kAllSubspaces) {
      auto once = project(p, s);
      idem = std::max(idem, max_diff(project(once, s), once));
      lin = std::max(lin, max_diff(project(mix, s), perturb(power(alpha, once), project(q, s))));
    }
  }
  bool ok = recon <= 1e-10 && orth <= 1e-9 && pyth <= 1e-8 && idem <= 1e-10 && lin <= 1e-10;
  return {ok, std::to_string(tables) + " tables, sizes 2-6: reconstruction " + sci(recon) + ", orthogonality " +
                  sci(orth) + ", Pythagoras " + sci(pyth) + ", idempotence " + sci(idem) + ", linearity " + sci(lin)};
}

Outcome dimension_ledger() {
  bool ok = true;
  std::ostringstream d;
  for (Index n = 2; n <= 6; ++n) {
    const Index expected[] = {2 * n - 2, (n - 1) * (n - 1), n * (n + 1) / 2 - 1, n * (n - 1) / 2,
                              (n - 1) * (n + 4) / 2, n * (n - 1)};
    const Subspace kinds[] = {Subspace::ind, Subspace::int_, Subspace::sym, Subspace::skew, Subspace::qs, Subspace::gmh};
    d << (n > 2 ? "; " : "") << "I=" << n << ":";
    for (int k = 0; k < 6; ++k) {
      auto rank = static_cast<Index>(oracle::subspace_basis(kinds[k], n).size());
      ok = ok && rank == expected[k];
      d << " " << to_string(kinds[k]) << "=" << rank << (rank == expected[k] ? "" : "(!)");
    }
  }
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int failed_probes = 0, probes = 0;
  for (Index n = 2; n <= 6; ++n) {
    for (int k = 0; k < 100; ++k) {
      auto p = oracle::random_table(n, n, 7000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k));
      for (Subspace s : {Subspace::qs, Subspace::gmh})
        worst = std::max(worst, max_diff(project(p, s), oracle::basis_projection(p, s)));
    }
    auto p = oracle::random_table(n, n, 99 + static_cast<std::uint64_t>(n));
    for (Subspace s : {Subspace::qs, Subspace::gmh}) {
      ++probes;
      if (!oracle::minimality_probe(p, s, 1000, 1234 + static_cast<std::uint64_t>(n))) ++failed_probes;
    }
  }
  return {worst <= 1e-9 && failed_probes == 0,
          "max |closed form - basis projection| = " + sci(worst) + " over 100 tables per size; " +
              std::to_string(failed_probes) + "/" + std::to_string(probes) +
              " minimality probes (1000 members each) beaten"};
}

Outcome quasi_symmetry_equivalence() {
  oracle::Rng rng(2718);
  double worst_q2 = 0.0, worst_odds = 0.0;
  for (int k = 0; k < 1000; ++k) {
    auto p = oracle::qs_generate(oracle::random_qs_params(2 + k % 5, rng));
    worst_q2 = std::max(worst_q2, simplicial_quasi_skewness(p));
    worst_odds = std::max(worst_odds, odds_ratio_asymmetry(p));
  }
  int asymmetric = 0, zero_q2 = 0;
  for (int k = 0; k < 1000; ++k) {
    const Index n = 3 + k % 4;
    auto p = oracle::random_table(n, n, 31000 + static_cast<std::uint64_t>(k));
    if (odds_ratio_asymmetry(p) > 0.1) {
      ++asymmetric;
      if (!(simplicial_quasi_skewness(p) > 0.0)) ++zero_q2;
    }
  }
  bool ok = worst_q2 < 1e-12 && worst_odds <= 1e-9 && zero_q2 == 0 && asymmetric > 0;
  return {ok, "1000 generated tables: max Q2 " + sci(worst_q2) + ", max log odds asymmetry " + sci(worst_odds) + "; " +
                  std::to_string(asymmetric) + " random tables with asymmetry > 0.1, " + std::to_string(zero_q2) +
                  " with Q2 = 0"};
}

Outcome degenerate_cases() {
  double two = 0.0, sym = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    two = std::max(two, simplicial_quasi_skewness(oracle::random_table(2, 2, seed)));
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto p = random_symmetric(2 + static_cast<Index>(seed % 5), seed);
    sym = std::max({sym, simplicial_skewness(p), simplicial_quasi_skewness(p), geometric_marginal_heterogeneity(p)});
  }
  std::ostringstream out, err;
  int code = cli::run_decompose({std::string(AITCHISON_TEST_DATA) + "/with_zero.csv", "reject", std::nullopt,
                                 std::nullopt, 2},
                                out, cli::Diagnostics{err});
  std::string diag = err.str();
  bool cli_ok = code == cli::kExitInput && diag.find("ZeroCellRejected") != std::string::npos &&
                diag.find("--smoothing pseudocount") != std::string::npos;
  if (!diag.empty() && diag.back() == '\n') diag.pop_back();
  return {two <= 1e-14 && sym <= 1e-14 && cli_ok,
          "max Q2 over 1000 2x2 tables " + sci(two) + "; max E2/Q2/M2 over 500 symmetric tables " + sci(sym) +
              "; zero-count CLI exit " + std::to_string(code) + " with \"" + diag + "\""};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Stuart norms", norms},
      {2, "Stuart E2, Q2, M2", measures},
      {3, "Stuart printed decomposition tables", printed_tables},
      {4, "Stuart QS local odds ratios", odds_ratios},
      {5, "Stuart contribution arrays", contribution_arrays},
      {6, "orthogonal decomposition suite", decomposition_suite},
      {7, "dimension ledger", dimension_ledger},
      {8, "oracle equivalence and minimality", oracle_equivalence},
      {9, "quasi-symmetry representation equivalence", quasi_symmetry_equivalence},
      {10, "degenerate cases", degenerate_cases},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    std::string arg = argv[k];
    if (arg == "--only" && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail << "\n";
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
