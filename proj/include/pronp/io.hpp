// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file io.hpp
///
/// JSON and plain-text serialization for matrices, realizations and solve
/// reports. Field order is fixed so that equal inputs serialize to equal
/// bytes.
///

#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pronp/matrix_kit.hpp"
#include "pronp/pro.hpp"
#include "pronp/solver.hpp"

namespace pronp::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

inline double finite_number(const Json& j, const char* where) {
  if (!j.is_number()) parse_fail(std::string(where) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(where) + ": non-finite number");
  return x;
}

inline Index count_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    parse_fail(std::string("missing or invalid \"") + key + "\"");
  }
  return Index(j.at(key).get<long long>());
}

}  // namespace detail

inline Json matrix_to_json(const Matrix& X) {
  if (!X.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "matrix_to_json: non-finite entry");
  }
  Json data = Json::array();
  for (Index i = 0; i < X.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < X.cols(); ++j) row.push_back(X(i, j));
    data.push_back(std::move(row));
  }
  Json out;
  out["rows"] = X.rows();
  out["cols"] = X.cols();
  out["data"] = std::move(data);
  return out;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) detail::parse_fail("matrix: expected an object");
  const Index rows = detail::count_field(j, "rows");
  const Index cols = detail::count_field(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) detail::parse_fail("matrix: missing \"data\"");
  const Json& data = j.at("data");
  if (Index(data.size()) != rows) detail::parse_fail("matrix: row count does not match \"rows\"");
  Matrix X(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = data.at(std::size_t(i));
    if (!row.is_array() || Index(row.size()) != cols) {
      detail::parse_fail("matrix: row " + std::to_string(i) + " does not have " +
                         std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) X(i, c) = detail::finite_number(row.at(std::size_t(c)), "matrix");
  }
  return X;
}

/// Whitespace-delimited rows, one per line; blank lines and lines starting
/// with '#' are skipped.
inline Matrix matrix_from_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        detail::parse_fail("plain-text matrix: bad number '" + tok + "'");
      }
      if (used != tok.size() || !std::isfinite(x)) {
        detail::parse_fail("plain-text matrix: bad number '" + tok + "'");
      }
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      detail::parse_fail("plain-text matrix: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  const Index r = Index(rows.size());
  const Index c = r ? Index(rows.front().size()) : 0;
  Matrix X(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) X(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  return X;
}

/// JSON if the first non-whitespace byte is '{', plain text otherwise.
inline Matrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      detail::parse_fail(std::string("matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  return matrix_from_text(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Matrix read_matrix_file(const std::string& path) {
  return parse_matrix(read_file(path));
}

inline Json realization_to_json(const ProRealization& f) {
  Json out;
  out["m"] = f.m();
  out["ell"] = Json::array();
  for (Index k = 0; k < f.m(); ++k) out["ell"].push_back(f.ell()(k));
  out["M_lower"] = Json::array();
  for (Index k = 0; k < f.strict_lower().size(); ++k) out["M_lower"].push_back(f.strict_lower()(k));
  return out;
}

inline ProRealization realization_from_json(const Json& j) {
  if (!j.is_object()) detail::parse_fail("realization: expected an object");
  const Index m = detail::count_field(j, "m");
  if (!j.contains("ell") || !j.at("ell").is_array() || Index(j.at("ell").size()) != m) {
    detail::parse_fail("realization: \"ell\" must be an array of length m");
  }
  const Index nl = m * (m - 1) / 2;
  if (!j.contains("M_lower") || !j.at("M_lower").is_array() ||
      Index(j.at("M_lower").size()) != nl) {
    detail::parse_fail("realization: \"M_lower\" must have m(m-1)/2 entries");
  }
  RowVector ell(m);
  for (Index k = 0; k < m; ++k) ell(k) = detail::finite_number(j.at("ell").at(std::size_t(k)), "ell");
  Vector lower(nl);
  for (Index k = 0; k < nl; ++k) {
    lower(k) = detail::finite_number(j.at("M_lower").at(std::size_t(k)), "M_lower");
  }
  return ProRealization(std::move(ell), std::move(lower));
}

inline ProRealization read_realization_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    detail::parse_fail(std::string("realization JSON: ") + e.what());
  }
  return realization_from_json(j);
}

inline Json optional_number(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

inline Json report_to_json(const SolveReport& r) {
  Json out;
  out["status"] = std::string(to_string(r.status));
  out["hill_pick"] = matrix_to_json(r.hill_pick);
  out["m"] = r.m;
  out["m_max"] = r.m_max;
  out["realization"] = r.realization ? realization_to_json(*r.realization) : Json(nullptr);
  out["interp_residual"] = optional_number(r.interp_residual);
  out["skew_residual"] = optional_number(r.skew_residual);
  out["diagnostics"] = r.diagnostics;
  return out;
}

inline SolveReport report_from_json(const Json& j) {
  if (!j.is_object()) detail::parse_fail("report: expected an object");
  SolveReport r;
  if (!j.contains("status") || !j.at("status").is_string()) detail::parse_fail("report: missing status");
  const auto st = parse_status(j.at("status").get<std::string>());
  if (!st) detail::parse_fail("report: unknown status");
  r.status = *st;
  if (!j.contains("hill_pick")) detail::parse_fail("report: missing hill_pick");
  r.hill_pick = matrix_from_json(j.at("hill_pick"));
  r.m = detail::count_field(j, "m");
  r.m_max = detail::count_field(j, "m_max");
  if (j.contains("realization") && !j.at("realization").is_null()) {
    r.realization = realization_from_json(j.at("realization"));
  }
  for (auto [key, slot] : {std::pair{"interp_residual", &r.interp_residual},
                           std::pair{"skew_residual", &r.skew_residual}}) {
    if (j.contains(key) && !j.at(key).is_null()) *slot = detail::finite_number(j.at(key), key);
  }
  if (j.contains("diagnostics")) {
    if (!j.at("diagnostics").is_array()) detail::parse_fail("report: diagnostics must be an array");
    for (const auto& d : j.at("diagnostics")) {
      if (!d.is_string()) detail::parse_fail("report: diagnostics must be strings");
      r.diagnostics.push_back(d.get<std::string>());
    }
  }
  return r;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pronp::io
