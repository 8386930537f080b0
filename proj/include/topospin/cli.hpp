#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "topospin/report.hpp"

namespace topospin::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kPass = 0, kAssertionFailed = 1, kValidation = 2, kBudget = 3 };

struct RunRequest {
  std::string command;  // phi | lens | zeta | search-min-replicas | verify | ladder-scan
  std::string route;    // phi: modular | brute | analytic | ratio
  std::string theory = "zn:2:0";
  int r = 2;
  std::string triple = "alpha,beta,gamma";
  std::string ladders;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = std::uint64_t{1} << 30;
  unsigned jobs = 0;
  std::optional<std::string> out;
  std::string engine;  // phi ratio: brute | analytic (default by theory)
  std::string suite = "all";
  int N = 2;
  int k_max = 4;
  int max_n = 6;
  std::optional<std::complex<double>> expect;
  double tol = 1e-12;
};

struct RunReport {
  nlohmann::json body;
  int exit_code = kPass;
};

struct Assertion {
  std::string name;
  bool pass;
  nlohmann::json lhs, rhs;
  double tol;
};

nlohmann::json to_json(std::complex<double> z);
nlohmann::json to_json(const Assertion& a);

// |a - b| <= tol * max(|a|, |b|, scale)
bool close_rel(std::complex<double> a, std::complex<double> b, double tol, double scale = 0);

RunReport run(const RunRequest& request);

// Appends one assertion per check of the named suite; returns a summary.
nlohmann::json run_suite(const std::string& suite, const EnumerationOptions& opts, std::vector<Assertion>& out);

}  // namespace topospin::cli
