#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "topospin/cli.hpp"

namespace {

using topospin::cli::RunRequest;

void add_theory_options(CLI::App* cmd, RunRequest& req) {
  cmd->add_option("--theory", req.theory, "zn:<N>:<p> | fibonacci | ising | file:<path>")->capture_default_str();
  cmd->add_option("--r", req.r, "replica parameter r")->capture_default_str();
}

void add_common_options(CLI::App* cmd, RunRequest& req) {
  cmd->add_option("--budget", req.budget, "enumeration budget")->capture_default_str();
  cmd->add_option("--jobs", req.jobs, "worker threads (0: all cores)")->capture_default_str();
  cmd->add_option("--out", req.out, "write the JSON report to this file");
}

void add_expect(CLI::App* cmd, RunRequest& req, std::vector<double>& expect) {
  cmd->add_option("--expect", expect, "assert the value equals re[,im]")->delimiter(',')->expected(1, 2);
  cmd->add_option("--tol", req.tol, "tolerance for --expect")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replica-permutation invariants of doubled topological phases"};
  app.set_version_flag("--version", topospin::cli::kVersion);
  app.require_subcommand(1);
  RunRequest req;
  std::vector<double> expect;

  auto* phi = app.add_subcommand("phi", "compute Phi(r) or the permutation expectation by one route");
  phi->require_subcommand(1);
  for (const char* route : {"modular", "brute", "analytic", "ratio"}) {
    auto* sub = phi->add_subcommand(route);
    add_theory_options(sub, req);
    add_common_options(sub, req);
    add_expect(sub, req, expect);
    if (std::string(route) == "brute" || std::string(route) == "analytic")
      sub->add_option("--triple", req.triple, "three of alpha|beta|gamma|id")->capture_default_str();
    if (std::string(route) != "modular" && std::string(route) != "brute")
      sub->add_option("--ladders", req.ladders, "AΛ=1,AB=1,BC=1,AC=1,BΛ=1,CΛ=1");
    if (std::string(route) == "brute") sub->add_option("--seed", req.seed, "apply a random vertex-phase circuit");
    if (std::string(route) == "ratio") sub->add_option("--engine", req.engine, "brute | analytic");
    sub->callback([&req, route] {
      req.command = "phi";
      req.route = route;
    });
  }

  auto* lens = app.add_subcommand("lens", "lens-space partition function Z(L(r,1))");
  auto* zeta = app.add_subcommand("zeta", "higher central charge");
  for (auto* sub : {lens, zeta}) {
    add_theory_options(sub, req);
    add_common_options(sub, req);
    add_expect(sub, req, expect);
  }
  lens->callback([&req] { req.command = "lens"; });
  zeta->callback([&req] { req.command = "zeta"; });

  auto* search = app.add_subcommand("search-min-replicas", "minimal replica count witness search");
  search->add_option("--N", req.N, "cyclic group order")->capture_default_str();
  search->add_option("--k-max", req.k_max, "largest k to search")->capture_default_str();
  search->add_option("--out", req.out, "write the JSON report to this file");
  search->callback([&req] { req.command = "search-min-replicas"; });

  auto* verify = app.add_subcommand("verify", "cross-route validation suite");
  verify->add_option("--suite", req.suite, "all | abelian-cross | nonabelian | gauss | invariance | structural | ratio")
      ->capture_default_str();
  add_common_options(verify, req);
  verify->callback([&req] { req.command = "verify"; });

  auto* scan = app.add_subcommand("ladder-scan", "raw value and ratio against uniform ladder length");
  add_theory_options(scan, req);
  add_common_options(scan, req);
  scan->add_option("--triple", req.triple, "three of alpha|beta|gamma|id")->capture_default_str();
  scan->add_option("--max-n", req.max_n, "largest ladder length")->capture_default_str();
  scan->callback([&req] { req.command = "ladder-scan"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : topospin::cli::kValidation;
  }
  if (!expect.empty()) req.expect = std::complex<double>(expect[0], expect.size() > 1 ? expect[1] : 0.0);
  if (req.command != "search-min-replicas" && req.command != "verify" && req.r < 2)
    std::cerr << "warning: r < 2 is outside the measurement protocol; computing anyway\n";

  auto report = topospin::cli::run(req);
  const std::string text = report.body.dump(2);
  if (req.out) {
    std::ofstream out(*req.out);
    if (!out) {
      std::cerr << "cannot write " << *req.out << "\n";
      return topospin::cli::kValidation;
    }
    out << text << '\n';
  } else {
    std::cout << text << '\n';
  }
  return report.exit_code;
}
