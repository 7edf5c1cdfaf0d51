// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace pronp;

namespace {

const std::string kData = PRONP_DEMO_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("pronp_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("solve exit codes", "[cli]") {
  const Result ok = run({"solve", data("diag12.json"), data("diag23.json"), "--json"});
  CHECK(ok.code == 0);
  const io::Json j = io::Json::parse(ok.out);
  CHECK(j["status"] == "solved");
  const ProRealization f = io::realization_from_json(j["realization"]);
  CHECK(std::abs(eval_scalar(f, 1.0) - 2.0) < 1e-8);

  CHECK(run({"solve", data("diag12.json"), data("diag13.json")}).code == 2);
  CHECK(run({"solve", data("diag12.json"), data("diag21.json")}).code == 3);
  CHECK(run({"solve", data("diag12.json"), data("swap.json")}).code == 4);
  CHECK(run({"solve", data("jordan2.txt"), data("jordan2_image.txt")}).code == 0);

  const Result missing = run({"solve", data("nope.json"), data("diag23.json")});
  CHECK(missing.code == 1);
  CHECK_FALSE(missing.err.empty());
  CHECK(run({"solve", data("diag12.json"), data("jordan2.txt"), "--trials", "0"}).code == 1);
  CHECK(run({"solve", data("diag12.json")}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("exit code is a function of status", "[cli]") {
  CHECK(cli::exit_code(SolveStatus::solved) == 0);
  CHECK(cli::exit_code(SolveStatus::infeasible) == 2);
  CHECK(cli::exit_code(SolveStatus::not_suboptimal) == 3);
  CHECK(cli::exit_code(SolveStatus::not_regular) == 4);
  CHECK(cli::exit_code(SolveStatus::not_in_bicommutant) == 4);
  CHECK(cli::exit_code(SolveStatus::numerical_failure) == 1);
}

TEST_CASE("solve output is reproducible", "[cli]") {
  const auto args = std::vector<std::string>{"solve", data("diag12.json"), data("diag23.json"), "--json",
                                             "--seed", "5"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("tolerance flags reach the gates", "[cli]") {
  // A huge residual tolerance accepts the swap matrix into {A}''.
  const Result r = run({"solve", data("diag12.json"), data("swap.json"), "--tol-residual", "10", "--json"});
  CHECK(io::Json::parse(r.out)["status"] != "not_in_bicommutant");
  CHECK(run({"solve", data("diag12.json"), data("diag23.json"), "--tol-psd", "-1"}).code == 1);
}

TEST_CASE("hill subcommand", "[cli]") {
  const Result good = run({"hill", data("diag12.json"), data("diag23.json"), "--json"});
  REQUIRE(good.code == 0);
  const io::Json j = io::Json::parse(good.out);
  CHECK(j["m"] == 2);
  CHECK(j["eigenvalues"][0].get<double>() > 0);
  CHECK(j["completely_positive"] == true);

  const Result rank1 = run({"hill", data("diag12.json"), data("diag21.json"), "--json"});
  REQUIRE(rank1.code == 0);
  CHECK(io::Json::parse(rank1.out)["m"] == 1);

  const std::string I = temp_file("I2.txt", "1 0\n0 1\n");
  const std::string twoI = temp_file("2I2.txt", "2 0\n0 2\n");
  const Result scalar = run({"hill", I, twoI, "--json"});
  REQUIRE(scalar.code == 0);
  const io::Json s = io::Json::parse(scalar.out);
  CHECK(s["m"] == 1);
  CHECK(s["completely_positive"] == true);
  CHECK(run({"hill", data("diag12.json"), data("diag13.json")}).code == 0);
}

TEST_CASE("order subcommand", "[cli]") {
  CHECK(run({"order", data("diag12.json"), data("diag23.json")}).code == 0);
  CHECK(run({"order", data("diag12.json"), data("diag12.json")}).code == 0);
  const Result v = run({"order", data("diag12.json"), data("diag13.json"), "--json", "--threads", "2"});
  CHECK(v.code == 2);
  CHECK(io::Json::parse(v.out)["verdict"] == "violation_witness");
}

TEST_CASE("eval and verify subcommands", "[cli]") {
  const Result e = run({"eval", data("f_two_point.json"), data("diag12.json"), "--json"});
  REQUIRE(e.code == 0);
  const Matrix fA = io::parse_matrix(e.out);
  Matrix expect = Matrix::Zero(2, 2);
  expect.diagonal() << 2, 3;
  CHECK((fA - expect).norm() < 1e-12);
  const Result text = run({"eval", data("f_two_point.json"), data("diag12.json")});
  CHECK((io::parse_matrix(text.out) - expect).norm() < 1e-12);

  const Result ok = run({"verify", data("f_two_point.json"), data("diag12.json"), data("diag23.json"), "--json"});
  CHECK(ok.code == 0);
  CHECK(io::Json::parse(ok.out)["residual"].get<double>() <= 1e-8);

  const std::string perturbed = temp_file("b_perturbed.txt", "2.1 0\n0 3\n");
  const Result off = run({"verify", data("f_two_point.json"), data("diag12.json"), perturbed, "--json"});
  CHECK(off.code == 2);
  CHECK(std::abs(io::Json::parse(off.out)["residual"].get<double>() - 0.1) < 1e-8);
}

TEST_CASE("bicommutant subcommand", "[cli]") {
  const Result r = run({"bicommutant", data("jordan2.txt"), "--json"});
  REQUIRE(r.code == 0);
  const io::Json j = io::Json::parse(r.out);
  CHECK(j["m_max"] == 2);
  CHECK(j["basis"].size() == 2);
  CHECK(run({"bicommutant", data("diag12.json")}).out.rfind("m_max: 2", 0) == 0);
}
