#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace topospin {

using Label = int;
using cplx = std::complex<double>;

struct AnyonLabel {
  Label id;
  std::string name;
  bool operator==(const AnyonLabel&) const = default;
};

// F-symbol index (i,j,m,k,l,n), paired with the tetrahedron edges as
//   i = a, j = b, m = ab, k = c, l = abc, n = bc.
// In the usual F^{abc}_{d;ef} notation this is F^{ijk}_{l;mn}: m is the
// (ij) channel and n the (jk) channel. Admissible triples are
// (i,j,m), (m,k,l), (j,k,n), (i,n,l).
using FIndex = std::array<Label, 6>;

struct FusionRule {
  Label a, b, c;
  int multiplicity;
  bool operator==(const FusionRule&) const = default;
};

// Raw, unvalidated category data. FusionCategory::create checks it.
struct CategoryData {
  std::vector<std::string> labels;
  std::vector<Label> dual;
  std::vector<double> dims;
  std::vector<FusionRule> fusion;
  std::map<FIndex, cplx> f;
  std::optional<std::vector<cplx>> twists;
  bool operator==(const CategoryData&) const = default;
};

class FusionCategory {
 public:
  static constexpr double kPentagonTolerance = 1e-9;

  // Throws ValidationError listing every violated invariant.
  static FusionCategory create(CategoryData data, double pentagon_tol = kPentagonTolerance);

  const CategoryData& data() const { return data_; }
  int rank() const { return static_cast<int>(data_.labels.size()); }
  std::vector<AnyonLabel> labels() const;
  const std::string& name(Label a) const { return data_.labels[a]; }
  Label dual(Label a) const { return data_.dual[a]; }
  double dim(Label a) const { return data_.dims[a]; }
  double total_dim_sq() const { return total_dim_sq_; }
  bool is_abelian() const;
  bool has_twists() const { return data_.twists.has_value(); }
  cplx twist(Label a) const { return data_.twists->at(a); }

  int fusion(Label a, Label b, Label c) const { return n_[(a * rank() + b) * rank() + c]; }
  bool admissible(Label i, Label j, Label m, Label k, Label l, Label n) const {
    return fusion(i, j, m) && fusion(m, k, l) && fusion(j, k, n) && fusion(i, n, l);
  }
  // Zero for inadmissible or unlisted indices.
  cplx f(Label i, Label j, Label m, Label k, Label l, Label n) const {
    return f_[((((i * rank() + j) * rank() + m) * rank() + k) * rank() + l) * rank() + n];
  }

  bool operator==(const FusionCategory& o) const { return data_ == o.data_; }

 private:
  CategoryData data_;
  std::vector<int> n_;
  std::vector<cplx> f_;
  double total_dim_sq_ = 0;
};

enum class BuiltinName { zn_strings, fibonacci, ising };

FusionCategory zn_strings(int N, int p);
FusionCategory fibonacci();
FusionCategory ising();
FusionCategory builtin_category(BuiltinName name, int N = 0, int p = 0);

// JSON document: labels, dual, dims (decimal strings), fusion [[a,b,c,mult]],
// f [{"idx":[i,j,m,k,l,n],"re":x,"im":y}], optional twists [{"re","im"}].
FusionCategory load_category(const std::string& json_text);
FusionCategory load_category_file(const std::string& path);
std::string save_category(const FusionCategory& cat);
void save_category_file(const FusionCategory& cat, const std::string& path);

// Maximum |lhs - rhs| over all admissible instances of
//   F^{fcd}_{e;gl} F^{abl}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}
// with F^{abc}_{d;ef} = f(a, b, e, c, d, f).
double check_pentagon(const FusionCategory& cat);

// Tetrahedral symbol F * sqrt(d_i d_j d_k d_l); exactly 0 when inadmissible.
cplx g_symbol(const FusionCategory& cat, Label i, Label j, Label m, Label k, Label l, Label n);

// S_R = sum_i d_i^{R+1} / D^{2R}.
double s_factor(const FusionCategory& cat, int R);

}  // namespace topospin
