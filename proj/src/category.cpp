#include "topospin/category.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topospin/error.hpp"
#include "topospin/numeric.hpp"

namespace topospin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::budget: return "budget";
    case ErrorKind::zero_phi: return "zero_phi";
    case ErrorKind::division_by_zero: return "division_by_zero";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::string fmt_idx(const FIndex& idx) {
  std::ostringstream os;
  os << '(' << idx[0];
  for (int q = 1; q < 6; ++q) os << ',' << idx[q];
  os << ')';
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(ErrorKind::validation, join(problems)), problems_(std::move(problems)) {}

namespace {

double pentagon_residual(int L, const std::vector<int>& n, const std::vector<cplx>& f) {
  auto N = [&](int a, int b, int c) { return n[(a * L + b) * L + c]; };
  // F^{abc}_{d;ef} = f(a,b,e,c,d,f)
  auto F = [&](int a, int b, int c, int d, int e, int g) {
    return f[((((a * L + b) * L + e) * L + c) * L + d) * L + g];
  };
  double worst = 0;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int d = 0; d < L; ++d)
          for (int fl = 0; fl < L; ++fl) {
            if (!N(a, b, fl)) continue;
            for (int g = 0; g < L; ++g) {
              if (!N(fl, c, g)) continue;
              for (int e = 0; e < L; ++e) {
                if (!N(g, d, e)) continue;
                for (int l = 0; l < L; ++l) {
                  if (!N(c, d, l) || !N(fl, l, e)) continue;
                  for (int k = 0; k < L; ++k) {
                    if (!N(b, l, k) || !N(a, k, e)) continue;
                    cplx lhs = F(fl, c, d, e, g, l) * F(a, b, l, e, fl, k);
                    cplx rhs = 0;
                    for (int h = 0; h < L; ++h)
                      rhs += F(a, b, c, g, fl, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l);
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
                }
              }
            }
          }
  return worst;
}

}  // namespace

FusionCategory FusionCategory::create(CategoryData data, double pentagon_tol) {
  std::vector<std::string> problems;
  const int L = static_cast<int>(data.labels.size());
  if (L == 0) throw ValidationError("missing vacuum: no labels declared");
  auto in_range = [L](long long x) { return x >= 0 && x < L; };

  bool structural = true;
  if (static_cast<int>(data.dual.size()) != L) {
    problems.push_back("dual: expected " + std::to_string(L) + " entries");
    structural = false;
  } else {
    for (int a = 0; a < L; ++a) {
      if (!in_range(data.dual[a])) {
        problems.push_back("dual: label " + std::to_string(a) + " maps out of range");
        structural = false;
      } else if (data.dual[data.dual[a]] != a) {
        problems.push_back("dual: not an involution at label " + std::to_string(a));
      }
    }
    if (structural && data.dual[0] != 0) problems.push_back("dual: vacuum must be self-dual");
  }

  if (static_cast<int>(data.dims.size()) != L) {
    problems.push_back("dims: expected " + std::to_string(L) + " entries");
    structural = false;
  } else {
    if (data.dims[0] != 1.0) problems.push_back("vacuum dimension must be 1");
    for (int a = 0; a < L; ++a) {
      if (!(data.dims[a] > 0) || !std::isfinite(data.dims[a]))
        problems.push_back("dims: label " + std::to_string(a) + " must be positive");
      else if (structural && std::abs(data.dims[data.dual[a]] - data.dims[a]) > 1e-12 * data.dims[a])
        problems.push_back("dims: d of label " + std::to_string(a) + " differs from its dual");
    }
  }

  std::vector<int> n(static_cast<size_t>(L) * L * L, 0);
  std::set<std::array<int, 3>> seen;
  for (const auto& rule : data.fusion) {
    if (!in_range(rule.a) || !in_range(rule.b) || !in_range(rule.c)) {
      problems.push_back("fusion: rule references an undeclared label");
      structural = false;
      continue;
    }
    if (!seen.insert({rule.a, rule.b, rule.c}).second)
      problems.push_back("fusion: duplicate rule for (" + std::to_string(rule.a) + "," +
                         std::to_string(rule.b) + "," + std::to_string(rule.c) + ")");
    if (rule.multiplicity < 0) problems.push_back("fusion: negative multiplicity");
    if (rule.multiplicity > 1) problems.push_back("fusion: multiplicity > 1 is not supported");
    n[(rule.a * L + rule.b) * L + rule.c] = std::max(rule.multiplicity, 0);
  }
  auto N = [&](int a, int b, int c) { return n[(a * L + b) * L + c]; };
  if (structural) {
    for (int a = 0; a < L; ++a)
      for (int c = 0; c < L; ++c) {
        int want = a == c ? 1 : 0;
        if (N(a, 0, c) != want || N(0, a, c) != want) {
          problems.push_back("fusion: vacuum is not a unit for label " + std::to_string(a));
          goto unit_done;
        }
      }
  unit_done:
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b)
        if (N(a, b, 0) != (b == data.dual[a] ? 1 : 0))
          problems.push_back("fusion: N_{" + std::to_string(a) + "," + std::to_string(b) +
                             "}^0 inconsistent with dual");
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b) {
        double rhs = 0;
        for (int c = 0; c < L; ++c) rhs += N(a, b, c) * data.dims[c];
        double lhs = data.dims[a] * data.dims[b];
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, lhs))
          problems.push_back("fusion: d_a d_b != sum_c N d_c for (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
      }
  }

  std::vector<cplx> f(static_cast<size_t>(std::pow(L, 6)), cplx{0, 0});
  for (const auto& [idx, val] : data.f) {
    bool ok = true;
    for (int q : idx) ok = ok && in_range(q);
    if (!ok) {
      problems.push_back("f: entry " + fmt_idx(idx) + " references an undeclared label");
      continue;
    }
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
      problems.push_back("f: entry " + fmt_idx(idx) + " is not finite");
      continue;
    }
    const auto [i, j, m, k, l, nn] = idx;
    if (!(N(i, j, m) && N(m, k, l) && N(j, k, nn) && N(i, nn, l))) {
      problems.push_back("f: entry " + fmt_idx(idx) + " is not admissible");
      continue;
    }
    f[((((i * L + j) * L + m) * L + k) * L + l) * L + nn] = val;
  }

  if (data.twists) {
    if (static_cast<int>(data.twists->size()) != L) {
      problems.push_back("twists: expected " + std::to_string(L) + " entries");
    } else {
      if (std::abs((*data.twists)[0] - cplx{1, 0}) > 1e-12) problems.push_back("twists: vacuum twist must be 1");
      for (int a = 0; a < L; ++a)
        if (std::abs(std::abs((*data.twists)[a]) - 1.0) > 1e-12)
          problems.push_back("twists: label " + std::to_string(a) + " is not unit modulus");
    }
  }

  if (structural && problems.empty()) {
    double res = pentagon_residual(L, n, f);
    if (!(res <= pentagon_tol)) {
      std::ostringstream os;
      os << "pentagon violation: residual " << res << " exceeds tolerance " << pentagon_tol;
      problems.push_back(os.str());
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  FusionCategory cat;
  cat.total_dim_sq_ = 0;
  for (double d : data.dims) cat.total_dim_sq_ += d * d;
  cat.data_ = std::move(data);
  cat.n_ = std::move(n);
  cat.f_ = std::move(f);
  return cat;
}

std::vector<AnyonLabel> FusionCategory::labels() const {
  std::vector<AnyonLabel> out;
  for (int a = 0; a < rank(); ++a) out.push_back({a, data_.labels[a]});
  return out;
}

bool FusionCategory::is_abelian() const {
  for (double d : data_.dims)
    if (d != 1.0) return false;
  return true;
}

namespace {

// Fills every admissible F entry with `value(idx)`.
template <class Fn>
void fill_admissible(CategoryData& data, Fn value) {
  const int L = static_cast<int>(data.labels.size());
  std::vector<int> n(L * L * L, 0);
  for (const auto& r : data.fusion) n[(r.a * L + r.b) * L + r.c] = r.multiplicity;
  auto N = [&](int a, int b, int c) { return n[(a * L + b) * L + c]; };
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      for (int m = 0; m < L; ++m) {
        if (!N(i, j, m)) continue;
        for (int k = 0; k < L; ++k)
          for (int l = 0; l < L; ++l) {
            if (!N(m, k, l)) continue;
            for (int nn = 0; nn < L; ++nn)
              if (N(j, k, nn) && N(i, nn, l)) data.f[{i, j, m, k, l, nn}] = value(FIndex{i, j, m, k, l, nn});
          }
      }
}

}  // namespace

FusionCategory zn_strings(int N, int p) {
  if (N < 2) throw ValidationError("zn_strings: N must be at least 2");
  if (p < 0 || p >= N) throw ValidationError("zn_strings: p must lie in 0..N-1");
  CategoryData data;
  for (int a = 0; a < N; ++a) {
    data.labels.push_back(std::to_string(a));
    data.dual.push_back(static_cast<Label>(mod(-a, N)));
    data.dims.push_back(1.0);
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) data.fusion.push_back({a, b, (a + b) % N, 1});
  // F(a,b,c) = exp(2 pi i p a {b,c} / N), carry {b,c} = 1 iff b + c >= N.
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        int carry = b + c >= N ? 1 : 0;
        data.f[{a, b, (a + b) % N, c, (a + b + c) % N, (b + c) % N}] =
            unit_root(static_cast<long long>(p) * a * carry, N);
      }
  return FusionCategory::create(std::move(data));
}

FusionCategory fibonacci() {
  const double phi = std::numbers::phi;
  CategoryData data;
  data.labels = {"1", "tau"};
  data.dual = {0, 1};
  data.dims = {1.0, phi};
  data.fusion = {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}};
  fill_admissible(data, [&](const FIndex& x) -> cplx {
    const auto [i, j, m, k, l, n] = x;
    if (i == 1 && j == 1 && k == 1 && l == 1) {
      if (m == 0 && n == 0) return 1.0 / phi;
      if (m == 1 && n == 1) return -1.0 / phi;
      return 1.0 / std::sqrt(phi);
    }
    return 1.0;
  });
  data.twists = std::vector<cplx>{1.0, unit_root(2, 5)};
  return FusionCategory::create(std::move(data));
}

FusionCategory ising() {
  // 0 = 1, 1 = sigma, 2 = psi
  CategoryData data;
  data.labels = {"1", "sigma", "psi"};
  data.dual = {0, 1, 2};
  data.dims = {1.0, std::numbers::sqrt2, 1.0};
  data.fusion = {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {2, 0, 2, 1},
                 {1, 1, 0, 1}, {1, 1, 2, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}, {2, 2, 0, 1}};
  fill_admissible(data, [](const FIndex& x) -> cplx {
    const auto [i, j, m, k, l, n] = x;
    if (i == 1 && j == 1 && k == 1 && l == 1) return (m == 2 && n == 2 ? -1.0 : 1.0) / std::numbers::sqrt2;
    if (x == FIndex{1, 2, 1, 1, 2, 1} || x == FIndex{2, 1, 1, 2, 1, 1}) return -1.0;
    return 1.0;
  });
  data.twists = std::vector<cplx>{1.0, unit_root(1, 16), -1.0};
  return FusionCategory::create(std::move(data));
}

FusionCategory builtin_category(BuiltinName name, int N, int p) {
  switch (name) {
    case BuiltinName::zn_strings: return zn_strings(N, p);
    case BuiltinName::fibonacci: return fibonacci();
    case BuiltinName::ising: return ising();
  }
  throw ValidationError("unknown builtin category");
}

// ---- file format ----

namespace {

using nlohmann::json;

std::string to_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_decimal(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ValidationError(where + ": '" + s + "' is not a decimal number");
    return x;
  }
  throw ValidationError(where + ": expected a decimal number or string");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ValidationError(where + ": unknown key '" + it.key() + "'");
  }
}

int as_label(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<int>();
}

cplx parse_complex(const json& j, const std::string& where, bool allow_idx) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  if (allow_idx)
    reject_unknown(j, {"idx", "re", "im"}, where);
  else
    reject_unknown(j, {"re", "im"}, where);
  if (!j.contains("re") || !j.contains("im")) throw ValidationError(where + ": needs re and im");
  return {parse_decimal(j["re"], where + ".re"), parse_decimal(j["im"], where + ".im")};
}

}  // namespace

FusionCategory load_category(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("category file must be a JSON object");
  reject_unknown(doc, {"labels", "dual", "dims", "fusion", "f", "twists"}, "category");
  for (const char* key : {"labels", "dual", "dims", "fusion", "f"})
    if (!doc.contains(key) || !doc[key].is_array())
      throw ValidationError(std::string("category: missing array '") + key + "'");

  CategoryData data;
  for (const auto& s : doc["labels"]) {
    if (!s.is_string()) throw ValidationError("labels: expected strings");
    data.labels.push_back(s.get<std::string>());
  }
  for (const auto& d : doc["dual"]) data.dual.push_back(as_label(d, "dual"));
  for (const auto& d : doc["dims"]) data.dims.push_back(parse_decimal(d, "dims"));
  for (const auto& r : doc["fusion"]) {
    if (!r.is_array() || r.size() != 4) throw ValidationError("fusion: entries must be [a,b,c,multiplicity]");
    data.fusion.push_back({as_label(r[0], "fusion"), as_label(r[1], "fusion"), as_label(r[2], "fusion"),
                           as_label(r[3], "fusion")});
  }
  for (const auto& e : doc["f"]) {
    cplx val = parse_complex(e, "f", true);
    if (!e.contains("idx") || !e["idx"].is_array() || e["idx"].size() != 6)
      throw ValidationError("f: idx must have six labels");
    FIndex idx;
    for (int q = 0; q < 6; ++q) idx[q] = as_label(e["idx"][q], "f.idx");
    if (!data.f.emplace(idx, val).second) throw ValidationError("f: duplicate entry " + fmt_idx(idx));
  }
  if (doc.contains("twists")) {
    if (!doc["twists"].is_array()) throw ValidationError("twists: expected an array");
    std::vector<cplx> tw;
    for (const auto& t : doc["twists"]) tw.push_back(parse_complex(t, "twists", false));
    data.twists = std::move(tw);
  }
  return FusionCategory::create(std::move(data));
}

FusionCategory load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open category file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_category(ss.str());
}

std::string save_category(const FusionCategory& cat) {
  const auto& d = cat.data();
  json doc = json::object();
  doc["labels"] = d.labels;
  doc["dual"] = d.dual;
  json dims = json::array();
  for (double x : d.dims) dims.push_back(to_decimal(x));
  doc["dims"] = dims;
  json fusion = json::array();
  for (const auto& r : d.fusion)
    if (r.multiplicity != 0) fusion.push_back({r.a, r.b, r.c, r.multiplicity});
  doc["fusion"] = fusion;
  json f = json::array();
  for (const auto& [idx, val] : d.f) {
    if (val == cplx{0, 0}) continue;
    f.push_back({{"idx", idx}, {"re", to_decimal(val.real())}, {"im", to_decimal(val.imag())}});
  }
  doc["f"] = f;
  if (d.twists) {
    json tw = json::array();
    for (const auto& t : *d.twists) tw.push_back({{"re", to_decimal(t.real())}, {"im", to_decimal(t.imag())}});
    doc["twists"] = tw;
  }
  return doc.dump(1);
}

void save_category_file(const FusionCategory& cat, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write category file '" + path + "'");
  out << save_category(cat) << '\n';
}

double check_pentagon(const FusionCategory& cat) {
  const int L = cat.rank();
  std::vector<int> n(L * L * L);
  std::vector<cplx> f(static_cast<size_t>(std::pow(L, 6)));
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) n[(a * L + b) * L + c] = cat.fusion(a, b, c);
  size_t q = 0;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      for (int m = 0; m < L; ++m)
        for (int k = 0; k < L; ++k)
          for (int l = 0; l < L; ++l)
            for (int nn = 0; nn < L; ++nn) f[q++] = cat.f(i, j, m, k, l, nn);
  return pentagon_residual(L, n, f);
}

cplx g_symbol(const FusionCategory& cat, Label i, Label j, Label m, Label k, Label l, Label n) {
  if (!cat.admissible(i, j, m, k, l, n)) return 0.0;
  return cat.f(i, j, m, k, l, n) * std::sqrt(cat.dim(i) * cat.dim(j) * cat.dim(k) * cat.dim(l));
}

double s_factor(const FusionCategory& cat, int R) {
  double num = 0;
  for (int a = 0; a < cat.rank(); ++a) num += std::pow(cat.dim(a), R + 1);
  return num / std::pow(cat.total_dim_sq(), R);
}

}  // namespace topospin
