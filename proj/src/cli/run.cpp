#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "topospin/analytic.hpp"
#include "topospin/brute.hpp"
#include "topospin/category.hpp"
#include "topospin/cli.hpp"
#include "topospin/error.hpp"
#include "topospin/modular.hpp"
#include "topospin/optimality.hpp"

namespace topospin::cli {

using nlohmann::json;

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Assertion& a) {
  return {{"name", a.name}, {"pass", a.pass}, {"lhs", a.lhs}, {"rhs", a.rhs}, {"tol", a.tol}};
}

bool close_rel(std::complex<double> a, std::complex<double> b, double tol, double scale) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), scale});
}

namespace {

struct Theory {
  std::string selector;
  bool zn = false;
  int N = 0, p = 0;
  std::optional<FusionCategory> cat;
  std::string file_text;  // for file: selectors, part of the cache key

  const FusionCategory& category() {
    if (!cat) cat = zn_strings(N, p);
    return *cat;
  }
  ModularData modular() const {
    if (zn) return modular_data(TwistedZnTheory::create(N, p));
    return modular_data_doubled(*cat);
  }
};

Theory parse_theory(const std::string& sel) {
  Theory t;
  t.selector = sel;
  if (sel.rfind("zn:", 0) == 0) {
    std::string rest = sel.substr(3);
    size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ValidationError("theory selector zn:<N>:<p> needs two integers");
    try {
      size_t used = 0;
      t.N = std::stoi(rest.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("N");
      std::string ps = rest.substr(colon + 1);
      t.p = std::stoi(ps, &used);
      if (used != ps.size()) throw std::invalid_argument("p");
    } catch (const std::exception&) {
      throw ValidationError("theory selector zn:<N>:<p> needs two integers");
    }
    if (t.N < 2 || t.p < 0 || t.p >= t.N) throw ValidationError("zn:<N>:<p> needs N >= 2 and 0 <= p < N");
    t.zn = true;
  } else if (sel == "fibonacci") {
    t.cat = fibonacci();
  } else if (sel == "ising") {
    t.cat = ising();
  } else if (sel.rfind("file:", 0) == 0) {
    std::ifstream in(sel.substr(5));
    if (!in) throw ValidationError("cannot open category file '" + sel.substr(5) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    t.file_text = ss.str();
    t.cat = load_category(t.file_text);
  } else {
    throw ValidationError("unknown theory selector '" + sel + "' (zn:<N>:<p> | fibonacci | ising | file:<path>)");
  }
  return t;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json report_json(const PhiReport& rep) {
  return {{"route", to_string(rep.route)},
          {"value", to_json(rep.value)},
          {"terms_enumerated", rep.terms_enumerated},
          {"terms_surviving", rep.terms_surviving},
          {"normalization_exponent", rep.normalization_exponent ? json(*rep.normalization_exponent) : json(nullptr)}};
}

std::string triple_name(int q) {
  static const char* names[8] = {"alpha,beta,gamma", "gamma,beta,alpha", "alpha,id,alpha", "gamma,id,gamma",
                                 "alpha,id,gamma",   "gamma,id,alpha",   "gamma,beta,gamma", "alpha,beta,alpha"};
  return names[q];
}

struct Outcome {
  std::optional<std::complex<double>> value;
  json decomposition = json::object();
  json extra = json::object();
  std::vector<Assertion> assertions;
};

bool cacheable(const RunRequest& req) {
  return req.command == "phi" && (req.route == "brute" || req.route == "analytic" || req.route == "ratio");
}

json inputs_of(const RunRequest& req) {
  json in = json::object();
  if (req.command == "search-min-replicas") {
    in["N"] = req.N;
    in["k_max"] = req.k_max;
    return in;
  }
  if (req.command == "verify") {
    in["suite"] = req.suite;
    in["budget"] = req.budget;
    return in;
  }
  in["theory"] = req.theory;
  in["r"] = req.r;
  if (req.command == "phi") in["route"] = req.route;
  if (req.command == "phi" && (req.route == "brute" || req.route == "analytic")) in["triple"] = req.triple;
  if (req.command == "phi" && req.route == "brute" && req.seed) in["seed"] = *req.seed;
  if (req.command == "phi" && req.route == "ratio" && !req.engine.empty()) in["engine"] = req.engine;
  if (req.command == "ladder-scan") {
    in["triple"] = req.triple;
    in["max_n"] = req.max_n;
  }
  if (!req.ladders.empty()) in["ladders"] = req.ladders;
  if (req.command == "phi" && req.route != "modular") in["budget"] = req.budget;
  if (req.expect) {
    in["expect"] = to_json(*req.expect);
    in["tol"] = req.tol;
  }
  return in;
}

Outcome run_phi(const RunRequest& req, Theory& theory, const EnumerationOptions& opts) {
  Outcome o;
  const int r = req.r;
  const LadderSpec ladders = req.ladders.empty() ? LadderSpec::unit() : LadderSpec::parse(req.ladders);
  if (req.route == "modular") {
    auto md = theory.modular();
    o.value = phi_invariant(md, r);
    o.decomposition = {{"phi", to_json(*o.value)}, {"prefactor_exponent", 0}, {"terms", md.anyons().size()}};
    o.extra["total_dim"] = md.total_dim();
  } else if (req.route == "brute") {
    if (!theory.zn) throw ValidationError("the brute route supports twisted Z_N theories only");
    auto triple = PermTriple::parse(req.triple, r);
    std::optional<VertexPhaseCircuit> circuit;
    if (req.seed) circuit = random_vertex_circuit(theory.N, *req.seed);
    auto rep = phi_brute(theory.N, theory.p, r, triple, circuit ? &*circuit : nullptr, opts);
    o.value = rep.value;
    const int e = rep.normalization_exponent.value_or(pinned_zn_exponent(r));
    o.decomposition = {{"phi", to_json(rep.value * std::pow(static_cast<double>(theory.N), e))},
                       {"prefactor_exponent", rep.normalization_exponent ? json(e) : json(nullptr)},
                       {"prefactor_exponent_source", rep.normalization_exponent ? "measured" : "unmeasured"},
                       {"terms", {{"enumerated", rep.terms_enumerated}, {"surviving", rep.terms_surviving}}}};
    o.extra["report"] = report_json(rep);
  } else if (req.route == "analytic") {
    auto triple = PermTriple::parse(req.triple, r);
    if (theory.zn && ladders == LadderSpec::unit()) {
      auto rep = phi_zn_constrained(theory.N, theory.p, r, triple, opts);
      o.value = rep.value;
      o.decomposition = {
          {"phi", to_json(rep.value * std::pow(static_cast<double>(theory.N), *rep.normalization_exponent))},
          {"prefactor_exponent", *rep.normalization_exponent},
          {"prefactor_exponent_source", "pinned"},
          {"terms", {{"enumerated", rep.terms_enumerated}, {"surviving", rep.terms_surviving}}}};
      o.extra["report"] = report_json(rep);
    } else {
      auto sn = phi_stringnet(theory.category(), r, triple, ladders, opts);
      o.value = sn.raw.value;
      o.decomposition = {{"phi", to_json(sn.phi)},
                         {"prefactor_exponent", nullptr},
                         {"prefactor", sn.prefactor},
                         {"area_factor", sn.area_factor},
                         {"labeling_sum", to_json(sn.labeling_sum)},
                         {"terms", {{"enumerated", sn.raw.terms_enumerated}, {"surviving", sn.raw.terms_surviving}}}};
      o.extra["report"] = report_json(sn.raw);
      o.extra["dfs_nodes"] = sn.dfs_nodes;
    }
  } else if (req.route == "ratio") {
    std::string engine = req.engine.empty() ? (theory.zn ? "brute" : "analytic") : req.engine;
    json terms = json::array();
    double ratio = 0;
    if (engine == "brute") {
      if (!theory.zn) throw ValidationError("the brute route supports twisted Z_N theories only");
      auto rr = phi_ratio_brute(theory.N, theory.p, r, opts);
      ratio = rr.ratio;
      for (int q = 0; q < 8; ++q)
        terms.push_back({{"triple", triple_name(q)}, {"value", to_json(rr.terms[q].value)}});
    } else if (engine == "analytic") {
      auto rr = extract_phi_ratio(theory.category(), r, ladders, opts);
      ratio = rr.ratio;
      for (int q = 0; q < 8; ++q)
        terms.push_back({{"triple", triple_name(q)}, {"value", to_json(rr.terms[q].raw.value)}});
    } else {
      throw ValidationError("unknown ratio engine '" + engine + "' (brute | analytic)");
    }
    o.value = ratio;
    auto md = theory.modular();
    o.decomposition = {{"phi", to_json(phi_invariant(md, r))}, {"prefactor_exponent", 0}, {"terms", terms}};
    o.extra["engine"] = engine;
  } else {
    throw ValidationError("unknown phi route '" + req.route + "' (modular | brute | analytic | ratio)");
  }
  return o;
}

Outcome run_ladder_scan(const RunRequest& req, Theory& theory, const EnumerationOptions& opts) {
  Outcome o;
  const int r = req.r;
  const auto triple = PermTriple::parse(req.triple, r);
  const auto& cat = theory.category();
  if (req.max_n < 2) throw ValidationError("ladder-scan needs --max-n of at least 2");
  json rows = json::array();
  std::vector<double> logs;
  std::optional<double> first_ratio;
  double slope_expected = 0;
  for (Edge e : kEdges)
    for (const auto& orbit : edge_orbits(triple, e).orbits)
      slope_expected += std::log(s_factor(cat, static_cast<int>(orbit.size())));
  for (int n = 1; n <= req.max_n; ++n) {
    auto ladders = LadderSpec::uniform(n);
    auto sn = phi_stringnet(cat, r, triple, ladders, opts);
    json row = {{"n", n}, {"raw", to_json(sn.raw.value)}, {"phi", to_json(sn.phi)}};
    if (std::abs(sn.raw.value) > 0) logs.push_back(std::log(std::abs(sn.raw.value)));
    try {
      double ratio = extract_phi_ratio(cat, r, ladders, opts).ratio;
      row["ratio"] = ratio;
      if (!first_ratio) first_ratio = ratio;
      o.assertions.push_back({"ratio independent of ladders (n=" + std::to_string(n) + ")",
                              std::abs(ratio - *first_ratio) <= 1e-10 * std::max(1.0, std::abs(*first_ratio)), ratio,
                              *first_ratio, 1e-10});
    } catch (const DivisionByZero&) {
      row["ratio"] = nullptr;
    }
    rows.push_back(row);
    if (n == 1) o.value = sn.raw.value;
  }
  for (size_t q = 1; q < logs.size(); ++q) {
    double slope = logs[q] - logs[q - 1];
    o.assertions.push_back({"log|raw| slope step " + std::to_string(q),
                            std::abs(slope - slope_expected) <= 1e-9 * std::max(1.0, std::abs(slope_expected)), slope,
                            slope_expected, 1e-9});
  }
  o.decomposition = {{"phi", rows.empty() ? json(nullptr) : rows[0]["phi"]},
                     {"prefactor_exponent", nullptr},
                     {"terms", rows},
                     {"expected_log_slope", slope_expected}};
  return o;
}

Outcome dispatch(const RunRequest& req, const EnumerationOptions& opts) {
  Outcome o;
  if (req.command == "search-min-replicas") {
    auto res = min_replica_search(req.N, req.k_max);
    json levels = json::array();
    for (const auto& l : res.levels) levels.push_back({{"k", l.k}, {"found", l.found}, {"nodes", l.nodes}});
    o.decomposition = {{"phi", nullptr}, {"prefactor_exponent", nullptr}, {"terms", levels}};
    o.extra["k_min"] = res.k_min ? json(*res.k_min) : json(nullptr);
    if (res.witness) {
      o.extra["witness"] = json::parse(witness_to_json(*res.witness));
      o.assertions.push_back({"witness verifies", verify_witness(req.N, 1, *res.witness), true, true, 0});
    }
    return o;
  }
  if (req.command == "verify") {
    o.extra["summary"] = run_suite(req.suite, opts, o.assertions);
    return o;
  }
  if (req.r < 1) throw ValidationError("r must be at least 1");
  Theory theory = parse_theory(req.theory);
  if (req.command == "phi") return run_phi(req, theory, opts);
  if (req.command == "lens") {
    auto md = theory.modular();
    auto lp = lens_partition(md, req.r);
    o.value = lp.z;
    o.decomposition = {{"phi", to_json(phi_invariant(md, req.r))}, {"prefactor_exponent", 0}, {"terms", md.anyons().size()}};
    o.extra["tqft_phi"] = to_json(lp.tqft_phi);
    o.extra["total_dim"] = md.total_dim();
    return o;
  }
  if (req.command == "zeta") {
    auto md = theory.modular();
    o.value = higher_central_charge(md, req.r);
    o.decomposition = {{"phi", to_json(phi_invariant(md, req.r))}, {"prefactor_exponent", 0}, {"terms", md.anyons().size()}};
    return o;
  }
  if (req.command == "ladder-scan") return run_ladder_scan(req, theory, opts);
  throw ValidationError("unknown command '" + req.command + "'");
}

std::string command_name(const RunRequest& req) {
  return req.command == "phi" ? "phi " + req.route : req.command;
}

std::optional<std::filesystem::path> cache_path(const RunRequest& req, const json& inputs) {
  const char* dir = std::getenv("TOPOSPIN_CACHE");
  if (!dir || !*dir || !cacheable(req)) return std::nullopt;
  std::string key = std::string(kVersion) + '\n' + command_name(req) + '\n' + inputs.dump();
  if (req.theory.rfind("file:", 0) == 0) {
    std::ifstream in(req.theory.substr(5));
    std::stringstream ss;
    ss << in.rdbuf();
    key += '\n' + ss.str();
  }
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
  return std::filesystem::path(dir) / name;
}

}  // namespace

RunReport run(const RunRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  json inputs;
  try {
    inputs = inputs_of(req);
  } catch (const std::exception&) {
    inputs = json::object();
  }
  auto finish = [&] {
    report.body["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  auto cache = cache_path(req, inputs);
  if (cache && std::filesystem::exists(*cache)) {
    std::ifstream in(*cache);
    try {
      json cached = json::parse(in);
      report.exit_code = cached.at("exit_code").get<int>();
      report.body = cached.at("body");
      return finish();
    } catch (const std::exception&) {
      // unreadable cache entry: recompute
    }
  }

  json body = {{"command", command_name(req)}, {"version", kVersion}, {"inputs", inputs}};
  try {
    EnumerationOptions opts{req.budget, req.jobs};
    Outcome o = dispatch(req, opts);
    if (req.expect) {
      if (!o.value) throw ValidationError("--expect needs a command that produces a value");
      o.assertions.push_back(
          {"value", close_rel(*o.value, *req.expect, req.tol), to_json(*o.value), to_json(*req.expect), req.tol});
    }
    body["value"] = o.value ? to_json(*o.value) : json(nullptr);
    body["decomposition"] = o.decomposition;
    json asserts = json::array();
    bool all_pass = true;
    for (const auto& a : o.assertions) {
      asserts.push_back(to_json(a));
      all_pass = all_pass && a.pass;
    }
    body["assertions"] = asserts;
    for (auto it = o.extra.begin(); it != o.extra.end(); ++it) body[it.key()] = it.value();
    report.exit_code = all_pass ? kPass : kAssertionFailed;
  } catch (const Error& e) {
    json err = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (auto* v = dynamic_cast<const ValidationError*>(&e)) err["problems"] = v->problems();
    body["error"] = err;
    report.exit_code = e.kind() == ErrorKind::budget ? kBudget : kValidation;
  }
  report.body = body;

  if (cache && report.exit_code != kBudget) {
    std::filesystem::create_directories(cache->parent_path());
    std::ofstream out(*cache);
    out << json{{"exit_code", report.exit_code}, {"body", report.body}}.dump();
  }
  return finish();
}

}  // namespace topospin::cli
