// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file cli.hpp
///
/// The pronp command line. Kept header-only so the test suite can drive
/// `run` in-process with string streams.
///
/// Exit codes:
///   0  success (solve: solved; verify: residual within tolerance)
///   1  I/O, parse or numerical failure
///   2  infeasible / order violation / verify residual too large
///   3  not suboptimal
///   4  precondition failure (not Lyapunov regular, B not in {A}'')
///

#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pronp/pronp.hpp"

namespace pronp::cli {

enum class Output { text, json };

struct CliConfig {
  Tolerances tolerances;
  std::uint64_t seed = 0;
  Index trials = 1000;
  Output output = Output::text;
  unsigned threads = 1;
};

inline int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return 0;
    case SolveStatus::infeasible: return 2;
    case SolveStatus::not_suboptimal: return 3;
    case SolveStatus::not_regular:
    case SolveStatus::not_in_bicommutant: return 4;
    case SolveStatus::numerical_failure: return 1;
  }
  return 1;
}

inline int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotLyapunovRegular:
    case ErrorCode::NotInBicommutant: return 4;
    default: return 1;
  }
}

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void print_matrix(std::ostream& out, const Matrix& X, const std::string& indent = "  ") {
  for (Index i = 0; i < X.rows(); ++i) {
    out << indent;
    for (Index j = 0; j < X.cols(); ++j) out << (j ? " " : "") << num(X(i, j));
    out << '\n';
  }
}

template <typename V>
inline std::string join(const V& v) {
  std::string s;
  for (Index k = 0; k < Index(v.size()); ++k) s += (k ? " " : "") + num(v(k));
  return s;
}

inline void require_pair(const Matrix& A, const Matrix& B) {
  if (A.rows() == 0 || A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A and B must be nonempty square matrices of equal size");
  }
}

}  // namespace detail

inline int cmd_solve(const std::string& a_path, const std::string& b_path,
                     const CliConfig& cfg, std::ostream& out) {
  const Matrix A = io::read_matrix_file(a_path);
  const Matrix B = io::read_matrix_file(b_path);
  detail::require_pair(A, B);
  const SolveReport r = solve(A, B, cfg.tolerances);
  if (cfg.output == Output::json) {
    out << io::dump(io::report_to_json(r));
  } else {
    out << "status: " << to_string(r.status) << '\n'
        << "m: " << r.m << "\nm_max: " << r.m_max << '\n';
    if (r.hill_pick.size()) {
      out << "hill_pick:\n";
      detail::print_matrix(out, r.hill_pick);
    }
    if (r.realization) {
      out << "ell: " << detail::join(r.realization->ell()) << '\n'
          << "M_lower: " << detail::join(r.realization->strict_lower()) << '\n';
    }
    if (r.interp_residual) out << "interp_residual: " << detail::num(*r.interp_residual) << '\n';
    if (r.skew_residual) out << "skew_residual: " << detail::num(*r.skew_residual) << '\n';
    for (const auto& d : r.diagnostics) out << "note: " << d << '\n';
  }
  return exit_code(r.status);
}

inline int cmd_hill(const std::string& a_path, const std::string& b_path,
                    const CliConfig& cfg, std::ostream& out) {
  const Matrix A = io::read_matrix_file(a_path);
  const Matrix B = io::read_matrix_file(b_path);
  detail::require_pair(A, B);
  const Tolerances& tol = cfg.tolerances;
  const LinearMatrixMap L = lab_map(A, B, tol);
  const HillRepresentation rep = minimal_hill(L, tol);
  const Index mmax = m_max(A, tol);
  const Vector ev = symmetric_eigenvalues(rep.H());
  const bool cp = is_completely_positive(L, tol);
  const bool member = membership(B, bicommutant_basis(A, tol), tol).member;
  const double recon = hill_reconstruction_error(L, rep, 10, cfg.seed);
  if (cfg.output == Output::json) {
    io::Json j;
    j["m"] = rep.m();
    j["m_max"] = mmax;
    j["hill_pick"] = io::matrix_to_json(rep.H());
    j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
    j["completely_positive"] = cp;
    j["in_bicommutant"] = member;
    j["reconstruction_error"] = recon;
    out << io::dump(j);
  } else {
    out << "m: " << rep.m() << "\nm_max: " << mmax << "\nhill_pick:\n";
    detail::print_matrix(out, rep.H());
    out << "eigenvalues: " << detail::join(ev) << '\n'
        << "completely_positive: " << (cp ? "true" : "false") << '\n'
        << "in_bicommutant: " << (member ? "true" : "false") << '\n'
        << "reconstruction_error: " << detail::num(recon) << '\n';
  }
  return 0;
}

inline int cmd_order(const std::string& a_path, const std::string& b_path,
                     const CliConfig& cfg, std::ostream& out) {
  const Matrix A = io::read_matrix_file(a_path);
  const Matrix B = io::read_matrix_file(b_path);
  detail::require_pair(A, B);
  const OrderVerdict v =
      lyap_order_sample_test(A, B, cfg.trials, cfg.seed, cfg.tolerances, cfg.threads);
  const char* verdict = v.violation ? "violation_witness" : "no_violation";
  if (cfg.output == Output::json) {
    io::Json j;
    j["verdict"] = verdict;
    j["trials"] = v.trials;
    j["seed"] = cfg.seed;
    j["trial"] = v.violation ? io::Json(v.trial) : io::Json(nullptr);
    j["min_eigenvalue"] = v.violation ? io::Json(v.min_eigenvalue) : io::Json(nullptr);
    j["witness"] = v.violation ? io::matrix_to_json(v.witness) : io::Json(nullptr);
    out << io::dump(j);
  } else {
    out << "verdict: " << verdict << "\ntrials: " << v.trials << '\n';
    if (v.violation) {
      out << "trial: " << v.trial << "\nmin_eigenvalue: " << detail::num(v.min_eigenvalue)
          << "\nwitness:\n";
      detail::print_matrix(out, v.witness);
    }
  }
  return v.violation ? 2 : 0;
}

inline int cmd_eval(const std::string& f_path, const std::string& a_path,
                    const CliConfig& cfg, std::ostream& out) {
  const ProRealization f = io::read_realization_file(f_path);
  const Matrix A = io::read_matrix_file(a_path);
  const Matrix fA = eval_matrix(f, A, cfg.tolerances);
  if (cfg.output == Output::json) {
    out << io::dump(io::matrix_to_json(fA));
  } else {
    detail::print_matrix(out, fA, "");
  }
  return 0;
}

inline int cmd_verify(const std::string& f_path, const std::string& a_path,
                      const std::string& b_path, const CliConfig& cfg, std::ostream& out) {
  const ProRealization f = io::read_realization_file(f_path);
  const Matrix A = io::read_matrix_file(a_path);
  const Matrix B = io::read_matrix_file(b_path);
  detail::require_pair(A, B);
  const double residual = (eval_matrix(f, A, cfg.tolerances) - B).norm();
  const double threshold = cfg.tolerances.residual_abs * (1.0 + B.norm());
  const bool ok = residual <= threshold;
  if (cfg.output == Output::json) {
    io::Json j;
    j["ok"] = ok;
    j["residual"] = residual;
    j["threshold"] = threshold;
    out << io::dump(j);
  } else {
    out << (ok ? "ok" : "mismatch") << "\nresidual: " << detail::num(residual)
        << "\nthreshold: " << detail::num(threshold) << '\n';
  }
  return ok ? 0 : 2;
}

inline int cmd_bicommutant(const std::string& a_path, const CliConfig& cfg, std::ostream& out) {
  const Matrix A = io::read_matrix_file(a_path);
  if (A.rows() == 0 || A.rows() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A must be a nonempty square matrix");
  }
  const SubspaceBasis bic = bicommutant_basis(A, cfg.tolerances);
  if (cfg.output == Output::json) {
    io::Json j;
    j["m_max"] = bic.dim();
    j["basis"] = io::Json::array();
    for (const auto& X : bic.basis()) j["basis"].push_back(io::matrix_to_json(X));
    out << io::dump(j);
  } else {
    out << "m_max: " << bic.dim() << '\n';
    for (Index k = 0; k < bic.dim(); ++k) {
      out << "basis[" << k << "]:\n";
      detail::print_matrix(out, bic[std::size_t(k)]);
    }
  }
  return 0;
}

/// Parses `args` (without the program name) and dispatches.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PRO rational interpolation at real matrix points", "pronp"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  bool json = false;
  app.add_option("--tol-rank", cfg.tolerances.rank_rel, "relative SVD rank cutoff")
      ->capture_default_str();
  app.add_option("--tol-psd", cfg.tolerances.psd_rel, "relative PSD floor")->capture_default_str();
  app.add_option("--tol-residual", cfg.tolerances.residual_abs, "residual tolerance")
      ->capture_default_str();
  app.add_option("--tol-regular", cfg.tolerances.regular_rel, "Lyapunov regularity floor")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "randomized trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for randomized trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--json", json, "emit JSON");

  std::string a, b, f;
  auto* solve_cmd = app.add_subcommand("solve", "construct a PRO interpolant f with f(A) = B");
  solve_cmd->add_option("A", a)->required();
  solve_cmd->add_option("B", b)->required();
  auto* hill_cmd = app.add_subcommand("hill", "Hill-Pick matrix and CP verdict of L_B L_A^-1");
  hill_cmd->add_option("A", a)->required();
  hill_cmd->add_option("B", b)->required();
  auto* order_cmd = app.add_subcommand("order", "randomized Lyapunov-order test");
  order_cmd->add_option("A", a)->required();
  order_cmd->add_option("B", b)->required();
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a stored realization at A");
  eval_cmd->add_option("F", f)->required();
  eval_cmd->add_option("A", a)->required();
  auto* verify_cmd = app.add_subcommand("verify", "check f(A) = B");
  verify_cmd->add_option("F", f)->required();
  verify_cmd->add_option("A", a)->required();
  verify_cmd->add_option("B", b)->required();
  auto* bic_cmd = app.add_subcommand("bicommutant", "basis of {A}'' and m_max");
  bic_cmd->add_option("A", a)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pronp: " << e.what() << '\n';
    return 1;
  }
  cfg.output = json ? Output::json : Output::text;

  try {
    cfg.tolerances.validate();
    if (solve_cmd->parsed()) return cmd_solve(a, b, cfg, out);
    if (hill_cmd->parsed()) return cmd_hill(a, b, cfg, out);
    if (order_cmd->parsed()) return cmd_order(a, b, cfg, out);
    if (eval_cmd->parsed()) return cmd_eval(f, a, cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(f, a, b, cfg, out);
    if (bic_cmd->parsed()) return cmd_bicommutant(a, cfg, out);
  } catch (const Error& e) {
    err << "pronp: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "pronp: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace pronp::cli
