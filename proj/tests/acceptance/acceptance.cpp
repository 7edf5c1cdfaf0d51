// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned here, not taken from Tolerances{}.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pronp/pronp.hpp"

using namespace pronp;

namespace {

constexpr double kEvalTol = 1e-8;       // criteria 1, 4, 5, 8
constexpr double kNegEigTol = 1e-6;     // criterion 2
constexpr double kIdentityTol = 1e-9;   // criterion 5
constexpr double kReconTol = 1e-8;      // criterion 6
constexpr Index kOrderTrials = 1000;    // criterion 2
constexpr Index kPositivityTrials = 10000;  // criterion 7

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Matrix jordan_image() {
  Matrix B(2, 2);
  B << 2, 1, 0, 2;
  return B;
}

ProRealization two_param_realization(const oracle::TwoParam& g) {
  Matrix M(2, 2);
  M << 0, std::sqrt(g.mu2), -std::sqrt(g.mu2), 0;
  return ProRealization::from_dense((RowVector(2) << std::sqrt(g.c), 0.0).finished(), M);
}

struct MapCase {
  std::string name;
  LinearMatrixMap L;
  bool is_lab = false;
};

std::vector<gen::RoundTrip> round_trips(Index& regenerated) {
  std::vector<gen::RoundTrip> out;
  regenerated = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    out.push_back(gen::round_trip(2 + Index(s % 3), 1000 + s));
    regenerated += out.back().regenerated;
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  const SolveReport r = solve(oracle::diag({1, 2}), oracle::diag({2, 3}));
  o.require(r.status == SolveStatus::solved, "status " + std::string(to_string(r.status)));
  if (!r.realization) return o;
  const double e1 = std::abs(eval_scalar(*r.realization, 1.0) - 2.0);
  const double e2 = std::abs(eval_scalar(*r.realization, 2.0) - 3.0);
  o.require(e1 <= kEvalTol && e2 <= kEvalTol, "f(1), f(2) off");
  const Tolerances tol;
  const Matrix pick = oracle::diagonal_pick(Vector::LinSpaced(2, 1, 2), Vector::LinSpaced(2, 2, 3));
  o.require(inertia(r.hill_pick, tol) == Inertia{2, 0, 0}, "inertia");
  o.require(inertia(pick, tol) == inertia(r.hill_pick, tol), "oracle Pick inertia");
  const oracle::TwoParam g = oracle::two_point_interpolant(1, 2, 2, 3);
  double worst = 0;
  for (double z : {0.25, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(eval_scalar(*r.realization, z) - g(z)));
  o.require(worst <= kEvalTol, "differs from 18z/(z^2+8)");
  o.note("|f(1)-2|=" + sci(e1) + " |f(2)-3|=" + sci(e2) + " |f-18z/(z^2+8)|=" + sci(worst));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Matrix A = oracle::diag({1, 2});
  const Matrix B = oracle::diag({1, 3});
  const SolveReport r = solve(A, B);
  o.require(r.status == SolveStatus::infeasible, "status " + std::string(to_string(r.status)));
  if (r.hill_pick.size() == 0) return o;
  const double lmin = symmetric_eigenvalues(r.hill_pick)(0);
  o.require(lmin < -kNegEigTol, "lambda_min not below -1e-6");
  o.require(std::abs(r.hill_pick.determinant() + 5.0 / 18.0) <= 1e-10, "det != -5/18");
  const OrderVerdict v = lyap_order_sample_test(A, B, kOrderTrials, 0);
  o.require(v.violation, "no order violation in 1000 trials");
  o.note("lambda_min=" + sci(lmin) + " det=" + sci(r.hill_pick.determinant()) +
         " order witness at trial " + std::to_string(v.trial));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Matrix A = oracle::diag({1, 2});
  const Matrix B = oracle::diag({2, 1});
  const SolveReport r = solve(A, B);
  o.require(r.status == SolveStatus::not_suboptimal, "status " + std::string(to_string(r.status)));
  o.require(r.m == 1 && r.m_max == 2, "m/m_max");
  // 2/z interpolates although the gate rejects the instance
  const ProRealization two_over_z((RowVector(1) << std::sqrt(2.0)).finished(), Vector(0));
  const double res = (eval_matrix(two_over_z, A) - B).norm();
  o.require(res <= kEvalTol, "2/z does not interpolate");
  o.note("m=" + std::to_string(r.m) + " m_max=" + std::to_string(r.m_max) + " |2/A - B|=" + sci(res));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Matrix A = oracle::jordan(2, 1.0);
  const Matrix B = jordan_image();
  const SolveReport r = solve(A, B);
  o.require(r.status == SolveStatus::solved, "status " + std::string(to_string(r.status)));
  if (!r.realization) return o;
  const double res = (eval_matrix(*r.realization, A) - B).norm();
  o.require(res <= kEvalTol, "f(A) != B");
  const oracle::TwoParam g = oracle::derivative_interpolant(1.0, 2.0, 1.0);
  o.require(std::abs(g.c - 8) < 1e-12 && std::abs(g.mu2 - 3) < 1e-12, "oracle constants");
  const double ores = (eval_matrix(two_param_realization(g), A) - B).norm();
  o.require(ores <= kEvalTol, "oracle 8z/(z^2+3) does not reproduce B");
  o.note("|f(A)-B|=" + sci(res) + " oracle residual=" + sci(ores));
  return o;
}

Outcome criterion5(const std::vector<gen::RoundTrip>& rts, Index regenerated) {
  Outcome o;
  double worst_id = 0, worst_skew = 0, worst_rt = 0;
  for (std::size_t s = 0; s < rts.size(); ++s) {
    const gen::RoundTrip& rt = rts[s];
    const Index n = rt.A.rows();
    const HillPick hp = hill_pick(rt.A, rt.B, Tolerances{});
    Rng rng = trial_stream(5000, s);
    for (int k = 0; k < 10; ++k) {
      Matrix X = gaussian_matrix(n, n, rng);
      X /= X.norm();
      worst_id = std::max(worst_id, lyap_identity_residual(rt.A, rt.B, hp.rep, X));
    }
    std::vector<Matrix> coll;
    for (int k = 0; k < 20; ++k) {
      Matrix R = gaussian_matrix(n, n, rng);
      coll.push_back(R / R.norm());
    }
    const PencilPair pp = build_pencils(rt.A, rt.B, hp.rep, coll, Tolerances{});
    for (Index k = 0; k < 10; ++k) {
      worst_skew = std::max(worst_skew, skew_intertwining_residual(pp, 2 * k, 2 * k + 1));
    }
    const SolveReport r = solve(rt.A, rt.B);
    if (r.status != SolveStatus::solved) {
      o.require(false, "instance " + std::to_string(s) + " " + std::string(to_string(r.status)));
      continue;
    }
    worst_rt = std::max(worst_rt, (eval_matrix(*r.realization, rt.A) - rt.B).norm());
  }
  o.require(worst_id <= kIdentityTol, "LyapID residual");
  o.require(worst_skew <= kIdentityTol, "skew intertwining residual");
  o.require(worst_rt <= kEvalTol, "round trip residual");
  o.note(std::to_string(rts.size()) + " instances, " + std::to_string(regenerated) +
         " regenerated; LyapID " + sci(worst_id) + " skewinter " + sci(worst_skew) + " g(A)-B " +
         sci(worst_rt));
  return o;
}

std::vector<MapCase> map_corpus(const std::vector<gen::RoundTrip>& rts) {
  const Tolerances tol;
  std::vector<MapCase> out;
  for (Index n = 2; n <= 3; ++n) {
    out.push_back({"identity n=" + std::to_string(n), LinearMatrixMap::identity(n)});
    out.push_back({"transpose n=" + std::to_string(n),
                   LinearMatrixMap::from_action(n, [](const Matrix& X) { return Matrix(X.transpose()); })});
    out.push_back({"trace n=" + std::to_string(n), LinearMatrixMap::from_action(n, [n](const Matrix& X) {
                     return Matrix(X.trace() * Matrix::Identity(n, n));
                   })});
  }
  const Matrix A = oracle::diag({1, 2});
  out.push_back({"L_AB crit1", lab_map(A, oracle::diag({2, 3}), tol), true});
  out.push_back({"L_AB crit2", lab_map(A, oracle::diag({1, 3}), tol), true});
  out.push_back({"L_AB crit3", lab_map(A, oracle::diag({2, 1}), tol), true});
  out.push_back({"L_AB crit4", lab_map(oracle::jordan(2, 1.0), jordan_image(), tol), true});
  for (std::size_t s = 0; s < rts.size(); ++s) {
    out.push_back({"L_AB round trip " + std::to_string(s), lab_map(rts[s].A, rts[s].B, tol), true});
  }
  return out;
}

Outcome criterion6(const std::vector<MapCase>& corpus) {
  Outcome o;
  const Tolerances tol;
  double worst = 0;
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const MapCase& mc = corpus[c];
    const Index rc = numerical_rank(choi(mc.L).matrix, tol);
    const Index dw = block_span(mc.L, tol).dim();
    o.require(rc == dw, mc.name + ": rank Choi " + std::to_string(rc) + " != dim W " + std::to_string(dw));
    try {
      const HillRepresentation rep = minimal_hill(mc.L, tol);
      const double e = hill_reconstruction_error(mc.L, rep, 20, 6000 + c);
      worst = std::max(worst, e);
      o.require(e <= kReconTol, mc.name + ": reconstruction " + sci(e));
      const bool cp = is_completely_positive(mc.L, tol);
      const bool pd = symmetric_eigenvalues(rep.H())(0) > psd_floor(rep.H(), tol);
      o.require(cp == pd, mc.name + ": CP verdict disagrees with H");
    } catch (const Error& e) {
      o.require(false, mc.name + ": " + e.what());
    }
  }
  o.note(std::to_string(corpus.size()) + " maps; worst reconstruction " + sci(worst));
  o.require(corpus.size() >= 20, "corpus smaller than 20");
  return o;
}

Outcome criterion7(const std::vector<MapCase>& corpus) {
  Outcome o;
  const Tolerances tol;
  Index lab = 0, cp_false = 0;
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const MapCase& mc = corpus[c];
    if (!mc.is_lab) continue;
    ++lab;
    const C1Verdict w = c1_diagnostic(block_span(mc.L, tol), 1000, 7000 + c, tol);
    o.require(w.witness_found, mc.name + ": no c1 witness");
    const bool cp = is_completely_positive(mc.L, tol);
    const PositivityVerdict pv = positivity_sample_test(mc.L, kPositivityTrials, 7100 + c, tol);
    if (!cp) {
      ++cp_false;
      o.require(pv.violation, mc.name + ": CP false but positivity sampling found no violation");
    }
    if (cp) o.require(!pv.violation, mc.name + ": CP map with a positivity witness");
  }
  o.note(std::to_string(lab) + " L_AB maps, " + std::to_string(cp_false) + " not CP (each with a witness)");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Tolerances tol;
  const Matrix A = oracle::diag({1, 2});
  const Matrix B = oracle::diag({2, 3});
  const HillPick hp = hill_pick(A, B, tol);
  const PencilPair pp = build_pencils(A, B, hp.rep, standard_collection(2), tol);
  const Matrix S = solve_skew(pp, tol);
  const RangeStructure rs = range_structure(pp, tol);
  const Index q = rs.complement_basis.cols();
  Rng rng = trial_stream(8000, 0);
  double worst = 0;
  for (int k = 0; k < 5; ++k) {
    const Matrix S2 = perturb_free_block(S, rs.complement_basis, skew_sample(q, rng));
    worst = std::max(worst, (eval_matrix(extract_realization(S2), A) - B).norm());
  }
  o.require(worst <= kEvalTol, "perturbed S breaks g(A) = B");
  o.note("dim of free block " + std::to_string(q) + "; worst |g(A)-B| " + sci(worst));
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Matrix A = oracle::diag({1, 2});
  const Matrix B = oracle::diag({2, 3});
  const std::string first = io::dump(io::report_to_json(solve(A, B)));
  const std::string second = io::dump(io::report_to_json(solve(A, B)));
  o.require(first == second, "library reports differ");

  auto cli_once = [] {
    std::ostringstream out, err;
    const std::string data = PRONP_DEMO_DATA;
    cli::run({"solve", data + "/diag12.json", data + "/diag23.json", "--json", "--seed", "0"}, out, err);
    return out.str();
  };
  const std::string c1 = cli_once();
  const std::string c2 = cli_once();
  o.require(!c1.empty() && c1 == c2, "CLI reports differ");
  o.require(c1 == first, "CLI and library reports differ");
  o.note(std::to_string(first.size()) + " bytes, identical");
  return o;
}

}  // namespace

int main() {
  Index regenerated = 0;
  const std::vector<gen::RoundTrip> rts = round_trips(regenerated);
  const std::vector<MapCase> corpus = map_corpus(rts);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"two-point diagonal suboptimal solve", criterion1},
      {"infeasibility detection", criterion2},
      {"suboptimality gate", criterion3},
      {"derivative interpolation via Jordan block", criterion4},
      {"structural identities on round trips", [&] { return criterion5(rts, regenerated); }},
      {"Choi/Hill consistency", [&] { return criterion6(corpus); }},
      {"positive implies CP echo", [&] { return criterion7(corpus); }},
      {"free skew block", criterion8},
      {"determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("AC%zu %s: %s [%s]\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
