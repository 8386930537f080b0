#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "topospin/category.hpp"
#include "topospin/error.hpp"

using namespace topospin;

namespace {

const double phi = std::numbers::phi;

// Z_N 3-cocycle written out independently of the category code.
cplx omega(int N, int p, int a, int b, int c) {
  return std::exp(cplx(0, 2 * std::numbers::pi * p * a * ((b + c) >= N ? 1 : 0) / N));
}

}  // namespace

TEST_CASE("zn_strings F entries") {
  auto triv = zn_strings(2, 0);
  for (const auto& [idx, val] : triv.data().f) CHECK(val == cplx(1, 0));

  auto ds = zn_strings(2, 1);
  // a = b = c = 1: ab = 0, abc = 1, bc = 0
  CHECK(ds.f(1, 1, 0, 1, 1, 0) == cplx(-1, 0));
  CHECK(ds.f(1, 0, 1, 1, 0, 1) == cplx(1, 0));

  for (int N : {2, 3, 5})
    for (int p = 0; p < N; ++p) {
      auto cat = zn_strings(N, p);
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          for (int c = 0; c < N; ++c)
            CHECK(std::abs(cat.f(a, b, (a + b) % N, c, (a + b + c) % N, (b + c) % N) - omega(N, p, a, b, c)) < 1e-14);
    }
}

TEST_CASE("zn cocycle satisfies the 3-cocycle identity") {
  for (int N : {2, 3, 4, 6})
    for (int p = 0; p < N; ++p)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          for (int c = 0; c < N; ++c)
            for (int d = 0; d < N; ++d) {
              cplx lhs = omega(N, p, (a + b) % N, c, d) * omega(N, p, a, b, (c + d) % N);
              cplx rhs = omega(N, p, a, b, c) * omega(N, p, a, (b + c) % N, d) * omega(N, p, b, c, d);
              CHECK(std::abs(lhs - rhs) < 1e-12);
            }
}

TEST_CASE("builtin parameters are validated") {
  CHECK_THROWS_AS(zn_strings(1, 0), ValidationError);
  CHECK_THROWS_AS(zn_strings(3, 3), ValidationError);
  CHECK_THROWS_AS(zn_strings(3, -1), ValidationError);
}

TEST_CASE("fibonacci data") {
  auto fib = fibonacci();
  CHECK(fib.rank() == 2);
  CHECK(fib.dim(1) == doctest::Approx(phi).epsilon(1e-15));
  CHECK(std::abs(fib.f(1, 1, 1, 1, 1, 1) - cplx(-1 / phi, 0)) < 1e-15);
  // F^{tau tau tau}_tau is a real symmetric involution.
  double F[2][2];
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) F[m][n] = fib.f(1, 1, m, 1, 1, n).real();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = F[i][0] * F[0][j] + F[i][1] * F[1][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    }
  CHECK(std::abs(fib.twist(1) - std::polar(1.0, 4 * std::numbers::pi / 5)) < 1e-15);
}

TEST_CASE("ising data") {
  auto is = ising();
  CHECK(is.dim(1) == doctest::Approx(std::sqrt(2.0)));
  // F^{sigma sigma sigma}_sigma is the Hadamard matrix in the (1, psi) basis.
  const double h = 1 / std::sqrt(2.0);
  CHECK(std::abs(is.f(1, 1, 0, 1, 1, 0) - h) < 1e-15);
  CHECK(std::abs(is.f(1, 1, 0, 1, 1, 2) - h) < 1e-15);
  CHECK(std::abs(is.f(1, 1, 2, 1, 1, 0) - h) < 1e-15);
  CHECK(std::abs(is.f(1, 1, 2, 1, 1, 2) + h) < 1e-15);
  CHECK(std::abs(is.twist(1) - std::polar(1.0, std::numbers::pi / 8)) < 1e-15);
  CHECK(is.twist(2) == cplx(-1, 0));
}

TEST_CASE("pentagon residuals") {
  CHECK(check_pentagon(zn_strings(2, 1)) < 1e-12);
  CHECK(check_pentagon(fibonacci()) < 1e-12);
  CHECK(check_pentagon(ising()) < 1e-12);

  auto data = fibonacci().data();
  data.f[{1, 1, 1, 1, 1, 1}] = -data.f[{1, 1, 1, 1, 1, 1}];
  auto bad = FusionCategory::create(data, std::numeric_limits<double>::infinity());
  CHECK(check_pentagon(bad) > 0.1);
  CHECK_THROWS_AS(FusionCategory::create(data), ValidationError);
}

TEST_CASE("g_symbol") {
  for (int N : {2, 3, 4}) {
    auto cat = zn_strings(N, 0);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          CHECK(g_symbol(cat, a, b, (a + b) % N, c, (a + b + c) % N, (b + c) % N) == cplx(1, 0));
  }
  CHECK(g_symbol(zn_strings(2, 1), 1, 1, 0, 1, 1, 0) == cplx(-1, 0));
  CHECK(std::abs(g_symbol(fibonacci(), 1, 1, 1, 1, 1, 1) - cplx(-phi, 0)) < 1e-14);
  // one label off an admissible tetrahedron
  CHECK(g_symbol(zn_strings(3, 1), 1, 1, 0, 1, 0, 2) == cplx(0, 0));
  CHECK(g_symbol(fibonacci(), 0, 1, 0, 1, 1, 1) == cplx(0, 0));
}

TEST_CASE("s_factor") {
  for (const auto& cat : {zn_strings(3, 1), fibonacci(), ising()}) CHECK(s_factor(cat, 1) == doctest::Approx(1.0));
  for (int N : {2, 3, 5})
    for (int R = 1; R <= 5; ++R) CHECK(s_factor(zn_strings(N, 1), R) == doctest::Approx(std::pow(N, 1 - R)));
  CHECK(s_factor(fibonacci(), 2) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("file round trip") {
  for (const auto& cat : {zn_strings(3, 1), fibonacci(), ising()}) {
    auto back = load_category(save_category(cat));
    CHECK(back == cat);
    CHECK(back.data().dims == cat.data().dims);
    CHECK(back.data().f == cat.data().f);
  }
}

TEST_CASE("file validation") {
  auto text = save_category(fibonacci());
  auto doc = nlohmann::json::parse(text);

  SUBCASE("vacuum dimension") {
    doc["dims"][0] = "2";
    try {
      load_category(doc.dump());
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("vacuum dimension") != std::string::npos);
    }
  }
  SUBCASE("perturbed F entry") {
    for (auto& e : doc["f"])
      if (e["idx"] == nlohmann::json{1, 1, 0, 1, 1, 0}) e["re"] = std::to_string(1 / phi + 1e-3);
    try {
      load_category(doc.dump());
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("pentagon") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    doc["braiding"] = 1;
    CHECK_THROWS_AS(load_category(doc.dump()), ValidationError);
  }
  SUBCASE("missing vacuum") {
    doc["labels"] = nlohmann::json::array();
    CHECK_THROWS_AS(load_category(doc.dump()), ValidationError);
  }
  SUBCASE("fusion inconsistent with dimensions") {
    doc["fusion"].erase(doc["fusion"].size() - 1);  // drops tau x tau -> tau
    CHECK_THROWS_AS(load_category(doc.dump()), ValidationError);
  }
  SUBCASE("undeclared label in F") {
    doc["f"].push_back({{"idx", {0, 0, 0, 0, 0, 7}}, {"re", "1"}, {"im", "0"}});
    CHECK_THROWS_AS(load_category(doc.dump()), ValidationError);
  }
  SUBCASE("not json") { CHECK_THROWS_AS(load_category("{labels"), ValidationError); }
}

TEST_CASE("every violated invariant is reported") {
  CategoryData d = fibonacci().data();
  d.dims[0] = 2;
  d.twists->at(1) = 2.0;
  try {
    FusionCategory::create(d);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.problems().size() >= 2);
  }
}
